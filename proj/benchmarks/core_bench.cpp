#include <benchmark/benchmark.h>

#include "gridbench/analytics.hpp"
#include "gridbench/png.hpp"
#include "gridbench/render.hpp"
#include "gridbench/tasks.hpp"
#include "gridbench/textio.hpp"

using namespace gridbench;

static void BM_LifeStep(benchmark::State& state) {
  Rng rng(1);
  Grid g = random_life_grid(int(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(life_step(g));
}
BENCHMARK(BM_LifeStep)->Arg(4)->Arg(8)->Arg(32);

static void BM_Transpose(benchmark::State& state) {
  Rng rng(2);
  Matrix m = random_transpose_input(int(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(transpose(m));
}
BENCHMARK(BM_Transpose)->Arg(12)->Arg(20);

static void BM_LuGenerateVerify(benchmark::State& state) {
  Rng rng(3);
  for (auto _ : state) {
    auto [a, pair] = lu_generate(int(state.range(0)), rng);
    benchmark::DoNotOptimize(lu_verify(a, pair));
  }
}
BENCHMARK(BM_LuGenerateVerify)->Arg(3)->Arg(6);

static void BM_ParseMatrixCanonical(benchmark::State& state) {
  Rng rng(4);
  std::string text = serialize_matrix(random_transpose_input(int(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(parse_matrix(text));
}
BENCHMARK(BM_ParseMatrixCanonical)->Arg(12)->Arg(20);

static void BM_ParseMatrixBracketed(benchmark::State& state) {
  Rng rng(5);
  Matrix m = random_transpose_input(int(state.range(0)), rng);
  std::string text = "[";
  for (int i = 0; i < m.rows(); ++i) {
    text += i ? ", [" : "[";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) text += ", ";
      text += format_number(m(i, j));
    }
    text += "]";
  }
  text += "]";
  for (auto _ : state) benchmark::DoNotOptimize(parse_matrix(text));
}
BENCHMARK(BM_ParseMatrixBracketed)->Arg(12)->Arg(20);

static void BM_RenderMatrix(benchmark::State& state) {
  Rng rng(6);
  Matrix m = random_transpose_input(int(state.range(0)), rng);
  MatrixRenderSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(render_matrix(m, spec));
}
BENCHMARK(BM_RenderMatrix)->Arg(12)->Arg(20);

static void BM_RenderGridPng(benchmark::State& state) {
  Rng rng(7);
  Grid g = random_life_grid(int(state.range(0)), rng);
  GridRenderSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(encode_png(render_grid(g, spec)));
}
BENCHMARK(BM_RenderGridPng)->Arg(4)->Arg(8);

static void BM_HeatmapAggregation(benchmark::State& state) {
  Rng rng(8);
  int n = 12;
  std::vector<EvalRecord> records;
  for (int k = 0; k < int(state.range(0)); ++k) {
    EvalRecord rec;
    rec.task = TaskKind::transpose;
    rec.size = n;
    rec.condition = Condition::text;
    ErrorMask mask{n, n, {}};
    for (int c = 0; c < n * n; ++c) mask.bits.push_back(std::uint8_t(rng.uniform_int(0, 1)));
    rec.verdict = Verdict::incorrect;
    rec.mask = std::move(mask);
    records.push_back(std::move(rec));
  }
  for (auto _ : state) benchmark::DoNotOptimize(cell_error_heatmap(records, "text"));
}
BENCHMARK(BM_HeatmapAggregation)->Arg(100)->Arg(1000);
