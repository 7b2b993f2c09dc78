#include "gridbench/pipeline.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "gridbench/client.hpp"
#include "gridbench/png.hpp"
#include "gridbench/textio.hpp"

namespace gridbench {

std::filesystem::path datasets_dir(const RunConfig& config) { return config.out_dir / "datasets"; }
std::filesystem::path images_dir(const RunConfig& config) { return config.out_dir / "images"; }
std::filesystem::path infer_dir(const RunConfig& config) { return config.out_dir / "infer"; }
std::filesystem::path eval_dir(const RunConfig& config) { return config.out_dir / "eval"; }
std::filesystem::path report_dir(const RunConfig& config) { return config.out_dir / "report"; }

std::string run_label(const std::string& dataset_name, Condition condition,
                      std::optional<RenderMode> mode) {
  std::string label = dataset_name + "-" + std::string(to_string(condition));
  if (mode && *mode == RenderMode::flow) label += "-flow";
  return label;
}

namespace {

bool spec_matches(const DatasetSpec& spec, const PipelineFilter& filter) {
  return !filter.task || spec.task == *filter.task;
}

DatasetSpec filtered_spec(const DatasetSpec& spec, const PipelineFilter& filter) {
  if (!filter.size) return spec;
  DatasetSpec out = spec;
  out.sizes.clear();
  out.mix_ratio.clear();
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    if (spec.sizes[i].size != *filter.size) continue;
    out.sizes.push_back(spec.sizes[i]);
    if (!spec.mix_ratio.empty()) out.mix_ratio.push_back(spec.mix_ratio[i]);
  }
  if (out.sizes.empty())
    throw std::invalid_argument("size filter removed every size from dataset " +
                                spec.resolved_name());
  return out;
}

std::vector<DatasetSpec> selected_specs(const RunConfig& config, const PipelineFilter& filter) {
  std::vector<DatasetSpec> specs;
  for (const auto& spec : config.datasets)
    if (spec_matches(spec, filter)) specs.push_back(filtered_spec(spec, filter));
  if (specs.empty()) throw std::invalid_argument("no dataset matches the task filter");
  return specs;
}

std::vector<std::filesystem::path> sorted_jsonl_files(const std::filesystem::path& dir,
                                                      bool skip_checkpoints = false) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::exists(dir)) return files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto path = entry.path();
    if (path.extension() != ".jsonl") continue;
    if (skip_checkpoints && path.stem().string().ends_with(".checkpoint")) continue;
    files.push_back(path);
  }
  std::sort(files.begin(), files.end());
  return files;
}

bool instance_matches(const TaskInstance& inst, const PipelineFilter& filter) {
  if (filter.task && inst.task != *filter.task) return false;
  if (filter.size && inst.size != *filter.size) return false;
  return true;
}

PromptLibrary prompt_library(const RunConfig& config) {
  return config.prompt_template.empty() ? PromptLibrary::builtin()
                                        : PromptLibrary::load(config.prompt_template);
}

}  // namespace

GenerateSummary run_generate(const RunConfig& config, const PipelineFilter& filter) {
  GenerateSummary summary;
  for (const auto& spec : selected_specs(config, filter)) {
    auto ds = build_dataset(spec);
    auto path = datasets_dir(config) / (spec.resolved_name() + ".jsonl");
    summary.manifests.push_back(export_dataset(ds, path, spec));
    summary.files.push_back(path);
  }
  return summary;
}

RenderSummary run_render(const RunConfig& config, std::optional<RenderMode> mode,
                         const PipelineFilter& filter) {
  RenderSummary summary;
  auto files = sorted_jsonl_files(datasets_dir(config));
  if (files.empty()) throw std::runtime_error("no datasets found; run generate first");
  for (const auto& file : files) {
    for (const auto& inst : import_dataset(file)) {
      if (!instance_matches(inst, filter)) continue;
      RenderMode eff = mode.value_or(native_mode(inst.task));
      RasterImage img = render_input(inst, eff, config.render);
      auto dir = images_dir(config) / std::string(to_string(eff));
      write_png(dir / (inst.id + ".png"), img);
      summary.images++;
      summary.dir = dir;
    }
  }
  return summary;
}

InferSummary run_infer(const RunConfig& config, Condition condition,
                       std::optional<RenderMode> mode, const PipelineFilter& filter) {
  InferSummary summary;
  PromptLibrary lib = prompt_library(config);
  auto files = sorted_jsonl_files(datasets_dir(config));
  if (files.empty()) throw std::runtime_error("no datasets found; run generate first");
  for (const auto& file : files) {
    auto instances = import_dataset(file);
    if (instances.empty()) continue;
    if (filter.task && instances.front().task != *filter.task) continue;

    std::vector<InferenceRequest> requests;
    for (const auto& inst : instances) {
      if (inst.split != Split::test || !instance_matches(inst, filter)) continue;
      PromptBundle bundle = build_prompt(inst, condition, lib);
      InferenceRequest req;
      req.instance_id = inst.id;
      req.condition = condition;
      req.instruction = bundle.instruction;
      req.answer_format_note = bundle.answer_format_note;
      if (condition == Condition::text) {
        req.payload_text = bundle.payload;
      } else {
        RenderMode eff = mode.value_or(native_mode(inst.task));
        req.image_png = encode_png(render_input(inst, eff, config.render));
      }
      requests.push_back(std::move(req));
    }
    if (requests.empty()) continue;

    std::string label = run_label(file.stem().string(), condition, mode);
    auto log_path = infer_dir(config) / (label + ".jsonl");
    auto checkpoint_path = infer_dir(config) / (label + ".checkpoint.jsonl");
    auto records =
        run_batch(requests, config.endpoint, config.endpoint.parallelism, checkpoint_path);
    write_inference_records(log_path, records);
    summary.logs.push_back(log_path);
    for (const auto& rec : records) {
      summary.total++;
      (rec.status == RequestStatus::ok ? summary.ok : summary.failed)++;
    }
  }
  if (summary.logs.empty()) throw std::runtime_error("no instances matched the infer filters");
  return summary;
}

namespace {

EvalRecord score_answer(const TaskInstance& inst, const std::string& answer_region,
                        const Tolerances& tol) {
  switch (inst.task) {
    case TaskKind::transpose:
      return score_transpose(parse_matrix(answer_region), std::get<Matrix>(inst.target));
    case TaskKind::life:
      return score_life(parse_grid(answer_region), std::get<Grid>(inst.target));
    case TaskKind::lu:
      return score_lu(parse_lu_pair(answer_region), std::get<Matrix>(inst.input), tol);
  }
  throw std::logic_error("bad TaskKind");
}

}  // namespace

ScoreSummary run_score(const RunConfig& config, std::optional<Condition> condition,
                       const PipelineFilter& filter) {
  // Gold targets for every known instance, across all datasets.
  std::unordered_map<std::string, TaskInstance> instances;
  for (const auto& file : sorted_jsonl_files(datasets_dir(config)))
    for (auto& inst : import_dataset(file)) instances.emplace(inst.id, std::move(inst));
  if (instances.empty()) throw std::runtime_error("no datasets found; run generate first");

  ScoreSummary summary;
  auto logs = sorted_jsonl_files(infer_dir(config), /*skip_checkpoints=*/true);
  if (logs.empty()) throw std::runtime_error("no inference logs found; run infer first");
  for (const auto& log : logs) {
    std::vector<EvalRecord> records;
    for (const auto& inf : read_inference_records(log)) {
      if (condition && inf.condition != *condition) continue;
      auto it = instances.find(inf.instance_id);
      if (it == instances.end())
        throw std::runtime_error("inference record references unknown instance: " +
                                 inf.instance_id);
      const TaskInstance& inst = it->second;
      if (!instance_matches(inst, filter)) continue;

      EvalRecord rec;
      if (inf.status == RequestStatus::failed) {
        rec.verdict = Verdict::malformed;
        rec.failure = FailureCategory::empty_response;
      } else {
        rec = score_answer(inst, strip_reasoning(inf.raw_response).answer_region,
                           config.tolerances);
      }
      rec.instance_id = inst.id;
      rec.task = inst.task;
      rec.size = inst.size;
      rec.condition = inf.condition;
      records.push_back(std::move(rec));
    }
    if (records.empty()) continue;
    auto out_path = eval_dir(config) / log.filename();
    write_eval_records(out_path, records);
    summary.files.push_back(out_path);
    summary.records += int(records.size());
  }
  if (summary.files.empty()) throw std::runtime_error("no records matched the score filters");
  return summary;
}

AnalyzeSummary run_analyze(const RunConfig& config) {
  auto files = sorted_jsonl_files(eval_dir(config));
  if (files.empty()) throw std::runtime_error("no eval records found; run score first");

  AnalyzeSummary summary;
  std::vector<EvalRecord> all_records;
  std::vector<ErrorHeatmap> heatmaps;
  // (dataset base, size) -> condition tag -> heatmap index
  std::map<std::pair<std::string, int>, std::map<std::string, std::size_t>> by_group;

  for (const auto& file : files) {
    std::string stem = file.stem().string();
    auto records = read_eval_records(file);
    all_records.insert(all_records.end(), records.begin(), records.end());

    std::string base, tag;
    for (std::string_view suffix : {"-visual-flow", "-visual", "-text"}) {
      if (stem.ends_with(suffix)) {
        base = stem.substr(0, stem.size() - suffix.size());
        tag = std::string(suffix.substr(1));
        break;
      }
    }

    std::map<int, std::vector<EvalRecord>> by_size;
    for (auto& rec : records) by_size[rec.size].push_back(std::move(rec));
    for (auto& [size, group] : by_size) {
      bool any_mask = std::any_of(group.begin(), group.end(),
                                  [](const EvalRecord& r) { return r.mask.has_value(); });
      if (!any_mask) continue;
      heatmaps.push_back(cell_error_heatmap(group, stem));
      if (!tag.empty()) by_group[{base, size}][tag] = heatmaps.size() - 1;
    }
  }

  std::vector<HeatmapDiff> diffs;
  for (const auto& [key, tags] : by_group) {
    auto text_it = tags.find("text");
    auto visual_it = tags.find("visual");
    auto flow_it = tags.find("visual-flow");
    if (text_it != tags.end() && visual_it != tags.end())
      diffs.push_back(
          heatmap_difference(heatmaps[text_it->second], heatmaps[visual_it->second]));
    if (flow_it != tags.end() && visual_it != tags.end())
      diffs.push_back(
          heatmap_difference(heatmaps[flow_it->second], heatmaps[visual_it->second]));
  }

  summary.accuracy = aggregate_accuracy(all_records);
  auto report = export_report(heatmaps, diffs, summary.accuracy, report_dir(config),
                              config.heatmap_cell_px);
  summary.heatmaps = int(heatmaps.size());
  summary.diffs = int(diffs.size());
  summary.files = std::move(report.files);
  return summary;
}

}  // namespace gridbench
