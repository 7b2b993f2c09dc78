#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gridbench/analytics.hpp"
#include "gridbench/config.hpp"
#include "gridbench/datagen.hpp"
#include "gridbench/evaluate.hpp"
#include "gridbench/render.hpp"

namespace gridbench {

/// Subcommand-level entry points. Each is idempotent for identical inputs:
/// datasets, images, eval records and reports are pure functions of the
/// config (plus the endpoint's responses for infer).
struct PipelineFilter {
  std::optional<TaskKind> task;
  std::optional<int> size;
};

struct GenerateSummary {
  std::vector<DatasetManifest> manifests;
  std::vector<std::filesystem::path> files;
};

GenerateSummary run_generate(const RunConfig& config, const PipelineFilter& filter = {});

struct RenderSummary {
  int images = 0;
  std::filesystem::path dir;
};

/// mode empty renders each task's native presentation.
RenderSummary run_render(const RunConfig& config, std::optional<RenderMode> mode,
                         const PipelineFilter& filter = {});

struct InferSummary {
  std::vector<std::filesystem::path> logs;
  int total = 0;
  int ok = 0;
  int failed = 0;
};

/// Sends the test split of every generated dataset through the endpoint.
/// Visual payloads are rendered on the fly under `mode` (native when empty).
InferSummary run_infer(const RunConfig& config, Condition condition,
                       std::optional<RenderMode> mode = {}, const PipelineFilter& filter = {});

struct ScoreSummary {
  std::vector<std::filesystem::path> files;
  int records = 0;
};

/// Scores every inference log found under the run directory (optionally
/// restricted to one condition) against the datasets' gold targets.
ScoreSummary run_score(const RunConfig& config, std::optional<Condition> condition = {},
                       const PipelineFilter& filter = {});

struct AnalyzeSummary {
  std::vector<AccuracyRow> accuracy;
  int heatmaps = 0;
  int diffs = 0;
  std::vector<std::filesystem::path> files;
};

AnalyzeSummary run_analyze(const RunConfig& config);

/// Run-directory layout helpers.
std::filesystem::path datasets_dir(const RunConfig& config);
std::filesystem::path images_dir(const RunConfig& config);
std::filesystem::path infer_dir(const RunConfig& config);
std::filesystem::path eval_dir(const RunConfig& config);
std::filesystem::path report_dir(const RunConfig& config);

/// "<dataset>-<condition>" plus "-flow" for the layout-disrupted probe.
std::string run_label(const std::string& dataset_name, Condition condition,
                      std::optional<RenderMode> mode);

}  // namespace gridbench
