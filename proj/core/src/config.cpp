#include "gridbench/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gridbench {

using nlohmann::json;

namespace {

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

void read_color(const json& j, const char* key, Rgb& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null())
    out = rgb_from_hex(it->get<std::string>());
}

DatasetSpec parse_dataset_spec(const json& j, std::uint64_t default_seed) {
  DatasetSpec spec;
  spec.task = task_from_string(j.at("task").get<std::string>());
  for (const auto& s : j.at("sizes"))
    spec.sizes.push_back({s.at("size").get<int>(), s.at("count").get<int>()});
  if (auto it = j.find("mix_ratio"); it != j.end() && !it->is_null())
    for (const auto& w : *it) spec.mix_ratio.push_back(w.get<double>());
  if (auto it = j.find("split_ratio"); it != j.end() && !it->is_null()) {
    if (it->size() != 2)
      throw std::invalid_argument("dataset spec: split_ratio needs two parts");
    spec.split_ratio = {(*it)[0].get<int>(), (*it)[1].get<int>()};
  }
  spec.master_seed = default_seed;
  read_field(j, "master_seed", spec.master_seed);
  read_field(j, "name", spec.name);
  return spec;
}

MatrixRenderSpec parse_matrix_spec(const json& j) {
  MatrixRenderSpec spec;
  read_field(j, "font_size", spec.font_size);
  read_field(j, "cell_padding_x", spec.cell_padding_x);
  read_field(j, "cell_padding_y", spec.cell_padding_y);
  read_field(j, "margin", spec.margin);
  read_field(j, "bracket_gap", spec.bracket_gap);
  read_field(j, "bracket_width", spec.bracket_width);
  read_field(j, "bracket_thickness", spec.bracket_thickness);
  if (auto it = j.find("cell_align"); it != j.end())
    spec.cell_align = cell_align_from_string(it->get<std::string>());
  read_color(j, "background_color", spec.background_color);
  read_color(j, "foreground_color", spec.foreground_color);
  spec.validate();
  return spec;
}

GridRenderSpec parse_grid_spec(const json& j) {
  GridRenderSpec spec;
  read_field(j, "font_size", spec.font_size);
  read_field(j, "cell_padding", spec.cell_padding);
  read_field(j, "grid_thickness", spec.grid_thickness);
  read_field(j, "margin", spec.margin);
  read_color(j, "background_color", spec.background_color);
  read_color(j, "foreground_color", spec.foreground_color);
  spec.validate();
  return spec;
}

FlowRenderSpec parse_flow_spec(const json& j) {
  FlowRenderSpec spec;
  read_field(j, "font_size", spec.font_size);
  read_field(j, "margin", spec.margin);
  read_field(j, "line_gap", spec.line_gap);
  read_field(j, "word_gap_spaces", spec.word_gap_spaces);
  read_color(j, "background_color", spec.background_color);
  read_color(j, "foreground_color", spec.foreground_color);
  spec.validate();
  return spec;
}

EndpointConfig parse_endpoint(const json& j) {
  EndpointConfig cfg;
  read_field(j, "base_url", cfg.base_url);
  read_field(j, "chat_path", cfg.chat_path);
  read_field(j, "model", cfg.model);
  read_field(j, "api_key_env", cfg.api_key_env);
  read_field(j, "max_retries", cfg.max_retries);
  read_field(j, "backoff_initial_ms", cfg.backoff_initial_ms);
  read_field(j, "backoff_factor", cfg.backoff_factor);
  read_field(j, "timeout_ms", cfg.timeout_ms);
  read_field(j, "temperature", cfg.temperature);
  read_field(j, "max_tokens", cfg.max_tokens);
  read_field(j, "parallelism", cfg.parallelism);
  if (cfg.max_retries < 1) throw std::invalid_argument("endpoint: max_retries must be >= 1");
  if (cfg.parallelism < 1) throw std::invalid_argument("endpoint: parallelism must be >= 1");
  return cfg;
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  json j = json::parse(text);
  RunConfig cfg;
  read_field(j, "master_seed", cfg.master_seed);

  if (auto it = j.find("out_dir"); it != j.end())
    cfg.out_dir = it->get<std::string>();
  if (cfg.out_dir.is_relative()) cfg.out_dir = base_dir / cfg.out_dir;

  if (auto it = j.find("datasets"); it != j.end())
    for (const auto& d : *it) cfg.datasets.push_back(parse_dataset_spec(d, cfg.master_seed));

  if (auto it = j.find("render"); it != j.end()) {
    if (auto m = it->find("matrix"); m != it->end()) cfg.render.matrix = parse_matrix_spec(*m);
    if (auto g = it->find("grid"); g != it->end()) cfg.render.grid = parse_grid_spec(*g);
    if (auto f = it->find("flow"); f != it->end()) cfg.render.flow = parse_flow_spec(*f);
  }

  if (auto it = j.find("prompt_template"); it != j.end() && !it->is_null()) {
    cfg.prompt_template = it->get<std::string>();
    if (cfg.prompt_template.is_relative()) cfg.prompt_template = base_dir / cfg.prompt_template;
    if (!std::filesystem::exists(cfg.prompt_template))
      throw std::runtime_error("config: prompt template not found: " +
                               cfg.prompt_template.string());
  }

  if (auto it = j.find("endpoint"); it != j.end()) cfg.endpoint = parse_endpoint(*it);

  if (auto it = j.find("tolerances"); it != j.end()) {
    read_field(*it, "reconstruction_abs", cfg.tolerances.reconstruction_abs);
    read_field(*it, "triangular_abs", cfg.tolerances.triangular_abs);
    if (cfg.tolerances.reconstruction_abs <= 0.0 || cfg.tolerances.triangular_abs <= 0.0)
      throw std::invalid_argument("config: tolerances must be strictly positive");
  }

  read_field(j, "heatmap_cell_px", cfg.heatmap_cell_px);
  if (cfg.heatmap_cell_px < 1)
    throw std::invalid_argument("config: heatmap_cell_px must be positive");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace gridbench
