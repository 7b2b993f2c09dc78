#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gridbench/pipeline.hpp"

namespace {

using namespace gridbench;

struct CommonArgs {
  std::string config_path;
  std::string task;
  int size = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Run configuration file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--task", args.task, "Restrict to one task: transpose|life|lu");
  cmd->add_option("--size", args.size, "Restrict to one instance size");
  cmd->add_option("--seed", args.seed, "Override the master seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--out", args.out, "Override the output directory");
}

RunConfig resolve_config(const CommonArgs& args) {
  RunConfig config = load_config(args.config_path);
  if (args.seed_set) {
    config.master_seed = args.seed;
    for (auto& spec : config.datasets) spec.master_seed = args.seed;
  }
  if (!args.out.empty()) config.out_dir = args.out;
  return config;
}

PipelineFilter resolve_filter(const CommonArgs& args) {
  PipelineFilter filter;
  if (!args.task.empty()) filter.task = task_from_string(args.task);
  if (args.size > 0) filter.size = args.size;
  return filter;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generator, renderer and evaluator for layout-defined grid tasks"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string mode_str;
  std::string condition_str;

  auto* generate = app.add_subcommand("generate", "Build and export the configured datasets");
  add_common(generate, args);

  auto* render = app.add_subcommand("render", "Render instance inputs to PNG");
  add_common(render, args);
  render->add_option("--mode", mode_str, "matrix|grid|flow (default: native per task)");

  auto* infer = app.add_subcommand("infer", "Submit test instances to the endpoint");
  add_common(infer, args);
  infer->add_option("--condition", condition_str, "text|visual")->required();
  infer->add_option("--mode", mode_str, "Visual rendering mode (flow for the disrupted probe)");

  auto* score = app.add_subcommand("score", "Score inference logs against gold targets");
  add_common(score, args);
  score->add_option("--condition", condition_str, "Restrict to one condition");

  auto* analyze = app.add_subcommand("analyze", "Aggregate accuracy and error heatmaps");
  add_common(analyze, args);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config = resolve_config(args);
    PipelineFilter filter = resolve_filter(args);
    std::optional<RenderMode> mode;
    if (!mode_str.empty()) mode = render_mode_from_string(mode_str);

    if (generate->parsed()) {
      auto summary = run_generate(config, filter);
      for (const auto& m : summary.manifests)
        std::printf("dataset %s: %d train / %d test (%s)\n", m.dataset.c_str(), m.train_count,
                    m.test_count, m.digest.c_str());
    } else if (render->parsed()) {
      auto summary = run_render(config, mode, filter);
      std::printf("rendered %d images under %s\n", summary.images,
                  images_dir(config).string().c_str());
    } else if (infer->parsed()) {
      auto summary =
          run_infer(config, condition_from_string(condition_str), mode, filter);
      std::printf("submitted %d requests: %d ok, %d failed\n", summary.total, summary.ok,
                  summary.failed);
      for (const auto& log : summary.logs) std::printf("  %s\n", log.string().c_str());
    } else if (score->parsed()) {
      std::optional<Condition> condition;
      if (!condition_str.empty()) condition = condition_from_string(condition_str);
      auto summary = run_score(config, condition, filter);
      std::printf("scored %d records into %zu files under %s\n", summary.records,
                  summary.files.size(), eval_dir(config).string().c_str());
    } else if (analyze->parsed()) {
      auto summary = run_analyze(config);
      std::printf("wrote %d heatmaps, %d difference maps under %s\n", summary.heatmaps,
                  summary.diffs, report_dir(config).string().c_str());
      for (const auto& row : summary.accuracy)
        std::printf("  %s n=%d %s: %d/%d correct (%.4f)\n", row.task.c_str(), row.size,
                    row.condition.c_str(), row.correct, row.total, row.accuracy);
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: invalid argument: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
