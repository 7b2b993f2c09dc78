#pragma once

#include <filesystem>
#include <vector>

#include "gridbench/client.hpp"
#include "gridbench/datagen.hpp"
#include "gridbench/render.hpp"
#include "gridbench/types.hpp"

namespace gridbench {

struct RunConfig {
  std::filesystem::path out_dir = "runs/default";
  std::uint64_t master_seed = 0;
  std::vector<DatasetSpec> datasets;
  RenderSpecs render;
  std::filesystem::path prompt_template;  // empty uses the built-in wording
  EndpointConfig endpoint;
  Tolerances tolerances;
  int heatmap_cell_px = 24;
};

/// JSON config file; every field has a default. Relative paths resolve
/// against the config file's directory. Throws when a referenced path does
/// not exist.
RunConfig load_config(const std::filesystem::path& path);

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);

}  // namespace gridbench
