#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gridbench/tasks.hpp"
#include "gridbench/types.hpp"

namespace gridbench {

struct TaskInstance {
  std::string id;
  TaskKind task = TaskKind::transpose;
  int size = 0;
  std::variant<Matrix, Grid> input;
  std::variant<Matrix, Grid, LUPair> target;
  std::uint64_t seed = 0;
  Split split = Split::train;
};

struct SizeSpec {
  int size = 0;
  int count = 0;
};

struct DatasetSpec {
  TaskKind task = TaskKind::transpose;
  std::vector<SizeSpec> sizes;
  /// One weight per size. Empty means per-size blocks with no interleaving;
  /// non-empty redistributes the total count across sizes by weight and
  /// interleaves the result.
  std::vector<double> mix_ratio;
  std::pair<int, int> split_ratio{5, 1};  // train : test
  std::uint64_t master_seed = 0;
  std::string name;  // defaults to the task name ("-mixed" appended when mixed)

  std::string resolved_name() const;
};

/// Per-instance seed, derived so that every (task, size, split, index) cell
/// gets its own disjoint stream from the master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, TaskKind task, int size, Split split,
                          std::uint64_t index);

std::string instance_id(TaskKind task, int size, Split split, std::uint64_t index,
                        std::uint64_t seed);

/// Instance whose input and target are a pure function of (task, size, seed).
/// split and index only enter the id.
TaskInstance generate_instance(TaskKind task, int size, std::uint64_t seed,
                               Split split = Split::train, std::uint64_t index = 0);

/// Train section first, then test. test count = floor(total * test_part /
/// (train_part + test_part)) per size, remainder to train.
std::vector<TaskInstance> build_dataset(const DatasetSpec& spec);

struct SizeCounts {
  int size = 0;
  int train = 0;
  int test = 0;
};

struct DatasetManifest {
  std::string dataset;
  std::string file;
  std::uint64_t master_seed = 0;
  int train_count = 0;
  int test_count = 0;
  std::vector<SizeCounts> per_size;
  std::string digest;  // fnv1a-64 over the exported bytes
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Writes one JSON record per line plus a sibling <stem>.manifest.json.
DatasetManifest export_dataset(const std::vector<TaskInstance>& ds,
                               const std::filesystem::path& path, const DatasetSpec& spec);

std::vector<TaskInstance> import_dataset(const std::filesystem::path& path);

DatasetManifest read_manifest(const std::filesystem::path& path);

std::filesystem::path manifest_path_for(const std::filesystem::path& dataset_path);

}  // namespace gridbench
