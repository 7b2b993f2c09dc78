#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>

#include "gridbench/datagen.hpp"
#include "gridbench/textio.hpp"
#include "support/tmpdir.hpp"

using namespace gridbench;

TEST_CASE("generate_instance is deterministic in (task, size, seed)") {
  for (auto task : {TaskKind::transpose, TaskKind::life, TaskKind::lu}) {
    int size = task == TaskKind::lu ? 3 : (task == TaskKind::life ? 4 : 12);
    TaskInstance a = generate_instance(task, size, 777);
    TaskInstance b = generate_instance(task, size, 777);
    CHECK(a.id == b.id);
    CHECK(a.input == b.input);
    CHECK(a.target == b.target);
  }
}

TEST_CASE("instance targets are oracle-consistent") {
  TaskInstance t = generate_instance(TaskKind::transpose, 12, 5);
  CHECK(std::get<Matrix>(t.target) == transpose(std::get<Matrix>(t.input)));

  TaskInstance l = generate_instance(TaskKind::life, 4, 6);
  CHECK(std::get<Grid>(l.target) == life_step(std::get<Grid>(l.input)));

  TaskInstance u = generate_instance(TaskKind::lu, 3, 7);
  CHECK(lu_verify(std::get<Matrix>(u.input), std::get<LUPair>(u.target)).accepted);
}

TEST_CASE("600 instances split 500/100 at ratio 5:1") {
  DatasetSpec spec;
  spec.task = TaskKind::transpose;
  spec.sizes = {{12, 600}};
  spec.master_seed = 1;
  auto ds = build_dataset(spec);
  int train = 0, test = 0;
  for (const auto& inst : ds) (inst.split == Split::train ? train : test)++;
  CHECK(train == 500);
  CHECK(test == 100);
}

TEST_CASE("test count rounds down, remainder goes to train") {
  DatasetSpec spec;
  spec.task = TaskKind::transpose;
  spec.sizes = {{12, 601}};
  auto ds = build_dataset(spec);
  int train = 0, test = 0;
  for (const auto& inst : ds) (inst.split == Split::train ? train : test)++;
  CHECK(test == 100);  // floor(601 / 6)
  CHECK(train == 501);
}

TEST_CASE("mixed 1:1:1 dataset has equal per-size counts") {
  DatasetSpec spec;
  spec.task = TaskKind::transpose;
  spec.sizes = {{12, 120}, {14, 120}, {16, 120}};
  spec.mix_ratio = {1, 1, 1};
  spec.master_seed = 3;
  auto ds = build_dataset(spec);
  std::map<int, int> train_counts, test_counts;
  for (const auto& inst : ds)
    (inst.split == Split::train ? train_counts : test_counts)[inst.size]++;
  CHECK(train_counts[12] == 100);
  CHECK(train_counts[14] == 100);
  CHECK(train_counts[16] == 100);
  CHECK(test_counts[12] == 20);
  CHECK(test_counts[14] == 20);
  CHECK(test_counts[16] == 20);
}

TEST_CASE("mixed dataset interleaves sizes round-robin") {
  DatasetSpec spec;
  spec.task = TaskKind::transpose;
  spec.sizes = {{12, 6}, {14, 6}, {16, 6}};
  spec.mix_ratio = {1, 1, 1};
  auto ds = build_dataset(spec);
  // Train section: 5 of each size interleaved 12,14,16,12,14,16,...
  CHECK(ds[0].size == 12);
  CHECK(ds[1].size == 14);
  CHECK(ds[2].size == 16);
  CHECK(ds[3].size == 12);
  CHECK(ds[4].size == 14);
  CHECK(ds[5].size == 16);
}

TEST_CASE("empty mix ratio keeps per-size blocks in order") {
  DatasetSpec spec;
  spec.task = TaskKind::life;
  spec.sizes = {{4, 12}, {5, 12}};
  auto ds = build_dataset(spec);
  // Train: 10 of size 4, then 10 of size 5; test afterwards.
  for (int i = 0; i < 10; ++i) CHECK(ds[i].size == 4);
  for (int i = 10; i < 20; ++i) CHECK(ds[i].size == 5);
  for (std::size_t i = 20; i < ds.size(); ++i) CHECK(ds[i].split == Split::test);
}

TEST_CASE("ids are unique and splits disjoint") {
  DatasetSpec spec;
  spec.task = TaskKind::lu;
  spec.sizes = {{3, 60}, {4, 60}};
  spec.master_seed = 9;
  auto ds = build_dataset(spec);
  std::set<std::string> ids;
  for (const auto& inst : ds) CHECK(ids.insert(inst.id).second);
  CHECK(ids.size() == ds.size());
}

TEST_CASE("train and test seed streams are disjoint") {
  std::set<std::uint64_t> train_seeds, test_seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    train_seeds.insert(derive_seed(1, TaskKind::transpose, 12, Split::train, i));
    test_seeds.insert(derive_seed(1, TaskKind::transpose, 12, Split::test, i));
  }
  for (auto s : test_seeds) CHECK(train_seeds.count(s) == 0);
}

TEST_CASE("life test inputs never duplicate a train input") {
  DatasetSpec spec;
  spec.task = TaskKind::life;
  spec.sizes = {{4, 360}};  // 300 train / 60 test over a 65536-state space
  spec.master_seed = 11;
  auto ds = build_dataset(spec);
  std::set<std::string> train_inputs;
  for (const auto& inst : ds)
    if (inst.split == Split::train)
      train_inputs.insert(serialize_grid(std::get<Grid>(inst.input)));
  for (const auto& inst : ds)
    if (inst.split == Split::test)
      CHECK(train_inputs.count(serialize_grid(std::get<Grid>(inst.input))) == 0);
}

TEST_CASE("build_dataset validates its spec") {
  DatasetSpec spec;
  spec.task = TaskKind::transpose;
  CHECK_THROWS_AS(build_dataset(spec), std::invalid_argument);  // no sizes
  spec.sizes = {{12, 0}};
  CHECK_THROWS_AS(build_dataset(spec), std::invalid_argument);  // zero count
  spec.sizes = {{12, 10}};
  spec.split_ratio = {5, 0};
  CHECK_THROWS_AS(build_dataset(spec), std::invalid_argument);  // invalid ratio
  spec.split_ratio = {5, 1};
  spec.mix_ratio = {1, 1};
  CHECK_THROWS_AS(build_dataset(spec), std::invalid_argument);  // weight count mismatch
}

TEST_CASE("export then import round-trips the dataset") {
  testing::TempDir tmp("datagen");
  DatasetSpec spec;
  spec.task = TaskKind::lu;
  spec.sizes = {{3, 30}, {4, 30}};
  spec.master_seed = 77;
  auto ds = build_dataset(spec);
  auto path = tmp / "lu.jsonl";
  auto manifest = export_dataset(ds, path, spec);
  auto back = import_dataset(path);
  REQUIRE(back.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(back[i].id == ds[i].id);
    CHECK(back[i].seed == ds[i].seed);
    CHECK(back[i].split == ds[i].split);
    CHECK(back[i].input == ds[i].input);
    CHECK(back[i].target == ds[i].target);
  }
  CHECK(manifest.train_count + manifest.test_count == int(ds.size()));
}

TEST_CASE("two exports of the same spec share one digest") {
  testing::TempDir tmp("digest");
  DatasetSpec spec;
  spec.task = TaskKind::transpose;
  spec.sizes = {{12, 36}};
  spec.master_seed = 5;
  auto m1 = export_dataset(build_dataset(spec), tmp / "a.jsonl", spec);
  auto m2 = export_dataset(build_dataset(spec), tmp / "b.jsonl", spec);
  CHECK(m1.digest == m2.digest);

  DatasetSpec other = spec;
  other.master_seed = 6;
  auto m3 = export_dataset(build_dataset(other), tmp / "c.jsonl", other);
  CHECK(m3.digest != m1.digest);
}

TEST_CASE("manifest counts match the dataset per split and size") {
  testing::TempDir tmp("manifest");
  DatasetSpec spec;
  spec.task = TaskKind::life;
  spec.sizes = {{4, 24}, {6, 12}};
  auto ds = build_dataset(spec);
  auto manifest = export_dataset(ds, tmp / "life.jsonl", spec);
  CHECK(manifest.train_count == 20 + 10);
  CHECK(manifest.test_count == 4 + 2);
  REQUIRE(manifest.per_size.size() == 2);
  CHECK(manifest.per_size[0].size == 4);
  CHECK(manifest.per_size[0].train == 20);
  CHECK(manifest.per_size[0].test == 4);
  CHECK(manifest.per_size[1].size == 6);
  CHECK(manifest.per_size[1].train == 10);
  CHECK(manifest.per_size[1].test == 2);

  auto loaded = read_manifest(manifest_path_for(tmp / "life.jsonl"));
  CHECK(loaded.digest == manifest.digest);
  CHECK(loaded.train_count == manifest.train_count);
}

TEST_CASE("dataset names derive from the task and mixing") {
  DatasetSpec spec;
  spec.task = TaskKind::transpose;
  CHECK(spec.resolved_name() == "transpose");
  spec.mix_ratio = {1, 1};
  CHECK(spec.resolved_name() == "transpose-mixed");
  spec.name = "custom";
  CHECK(spec.resolved_name() == "custom");
}
