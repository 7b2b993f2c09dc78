#include "gridbench/datagen.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gridbench/rng.hpp"

namespace gridbench {

using nlohmann::json;

namespace {

json number_json(double v) {
  if (v == std::int64_t(v)) return json(std::int64_t(v));
  return json(v);
}

json matrix_json(const Matrix& m) {
  json entries = json::array();
  for (double v : m.entries()) entries.push_back(number_json(v));
  return json{{"kind", "matrix"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json grid_json(const Grid& g) {
  json cells = json::array();
  for (auto c : g.cells()) cells.push_back(int(c));
  return json{{"kind", "grid"}, {"rows", g.rows()}, {"cols", g.cols()}, {"cells", cells}};
}

Matrix matrix_from_json(const json& j) {
  std::vector<double> entries;
  entries.reserve(j.at("entries").size());
  for (const auto& v : j.at("entries")) entries.push_back(v.get<double>());
  return Matrix(j.at("rows").get<int>(), j.at("cols").get<int>(), std::move(entries));
}

Grid grid_from_json(const json& j) {
  std::vector<std::uint8_t> cells;
  cells.reserve(j.at("cells").size());
  for (const auto& v : j.at("cells")) cells.push_back(std::uint8_t(v.get<int>()));
  return Grid(j.at("rows").get<int>(), j.at("cols").get<int>(), std::move(cells));
}

json value_json(const std::variant<Matrix, Grid, LUPair>& v) {
  if (const auto* m = std::get_if<Matrix>(&v)) return matrix_json(*m);
  if (const auto* g = std::get_if<Grid>(&v)) return grid_json(*g);
  const auto& pair = std::get<LUPair>(v);
  return json{{"kind", "lu"}, {"l", matrix_json(pair.l)}, {"u", matrix_json(pair.u)}};
}

json instance_json(const TaskInstance& inst) {
  json input = std::holds_alternative<Matrix>(inst.input)
                   ? matrix_json(std::get<Matrix>(inst.input))
                   : grid_json(std::get<Grid>(inst.input));
  return json{{"id", inst.id},          {"task", to_string(inst.task)},
              {"size", inst.size},      {"seed", inst.seed},
              {"split", to_string(inst.split)}, {"input", input},
              {"target", value_json(inst.target)}};
}

TaskInstance instance_from_json(const json& j) {
  TaskInstance inst;
  inst.id = j.at("id").get<std::string>();
  inst.task = task_from_string(j.at("task").get<std::string>());
  inst.size = j.at("size").get<int>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.split = split_from_string(j.at("split").get<std::string>());
  const json& input = j.at("input");
  if (input.at("kind") == "matrix")
    inst.input = matrix_from_json(input);
  else
    inst.input = grid_from_json(input);
  const json& target = j.at("target");
  std::string kind = target.at("kind").get<std::string>();
  if (kind == "matrix")
    inst.target = matrix_from_json(target);
  else if (kind == "grid")
    inst.target = grid_from_json(target);
  else
    inst.target = LUPair{matrix_from_json(target.at("l")), matrix_from_json(target.at("u"))};
  return inst;
}

std::string grid_key(const Grid& g) {
  std::string key;
  key.reserve(g.cells().size());
  for (auto c : g.cells()) key += char('0' + c);
  return key;
}

/// Largest-remainder apportionment of total across weights.
std::vector<int> apportion(int total, const std::vector<double>& weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (w <= 0.0) throw std::invalid_argument("mix_ratio weights must be positive");
    sum += w;
  }
  std::vector<int> counts(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  int assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double exact = total * weights[i] / sum;
    counts[i] = int(exact);
    assigned += counts[i];
    remainders.push_back({exact - counts[i], i});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int k = 0; k < total - assigned; ++k) counts[remainders[k % remainders.size()].second]++;
  return counts;
}

/// Deficit round-robin: group i is due whenever emitting it keeps the prefix
/// proportional to the group sizes.
std::vector<TaskInstance> interleave(std::vector<std::vector<TaskInstance>> groups) {
  std::size_t total = 0;
  for (const auto& g : groups) total += g.size();
  std::vector<std::size_t> emitted(groups.size(), 0);
  std::vector<TaskInstance> out;
  out.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t best = groups.size();
    std::int64_t best_score = std::numeric_limits<std::int64_t>::min();
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (emitted[i] >= groups[i].size()) continue;
      std::int64_t score =
          std::int64_t(groups[i].size()) * std::int64_t(k + 1) - std::int64_t(emitted[i]) * std::int64_t(total);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    out.push_back(std::move(groups[best][emitted[best]]));
    emitted[best]++;
  }
  return out;
}

}  // namespace

std::string DatasetSpec::resolved_name() const {
  if (!name.empty()) return name;
  std::string base(to_string(task));
  if (!mix_ratio.empty()) base += "-mixed";
  return base;
}

std::uint64_t derive_seed(std::uint64_t master_seed, TaskKind task, int size, Split split,
                          std::uint64_t index) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ (std::uint64_t(task) + 0x1000));
  h = splitmix64(h ^ std::uint64_t(size));
  h = splitmix64(h ^ (std::uint64_t(split) + 0x2000));
  h = splitmix64(h ^ index);
  return h;
}

std::string instance_id(TaskKind task, int size, Split split, std::uint64_t index,
                        std::uint64_t seed) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s-n%02d-%s-%06" PRIu64 "-%016" PRIx64,
                std::string(to_string(task)).c_str(), size,
                std::string(to_string(split)).c_str(), index, seed);
  return buf;
}

TaskInstance generate_instance(TaskKind task, int size, std::uint64_t seed, Split split,
                               std::uint64_t index) {
  Rng rng(seed);
  TaskInstance inst;
  inst.task = task;
  inst.size = size;
  inst.seed = seed;
  inst.split = split;
  inst.id = instance_id(task, size, split, index, seed);
  switch (task) {
    case TaskKind::transpose: {
      Matrix input = random_transpose_input(size, rng);
      inst.target = transpose(input);
      inst.input = std::move(input);
      break;
    }
    case TaskKind::life: {
      Grid input = random_life_grid(size, rng);
      inst.target = life_step(input);
      inst.input = std::move(input);
      break;
    }
    case TaskKind::lu: {
      auto [a, pair] = lu_generate(size, rng);
      inst.input = std::move(a);
      inst.target = std::move(pair);
      break;
    }
  }
  return inst;
}

std::vector<TaskInstance> build_dataset(const DatasetSpec& spec) {
  if (spec.sizes.empty()) throw std::invalid_argument("build_dataset: no sizes");
  if (spec.split_ratio.first <= 0 || spec.split_ratio.second <= 0)
    throw std::invalid_argument("build_dataset: split ratio parts must be positive");
  for (const auto& s : spec.sizes) {
    if (s.count <= 0) throw std::invalid_argument("build_dataset: zero instance count");
    if (s.size <= 0) throw std::invalid_argument("build_dataset: nonpositive size");
  }
  if (!spec.mix_ratio.empty() && spec.mix_ratio.size() != spec.sizes.size())
    throw std::invalid_argument("build_dataset: mix_ratio needs one weight per size");

  std::vector<int> totals;
  if (spec.mix_ratio.empty()) {
    for (const auto& s : spec.sizes) totals.push_back(s.count);
  } else {
    int total = 0;
    for (const auto& s : spec.sizes) total += s.count;
    totals = apportion(total, spec.mix_ratio);
  }

  int ratio_denom = spec.split_ratio.first + spec.split_ratio.second;
  std::vector<int> train_counts, test_counts;
  for (int total : totals) {
    int test = int(std::int64_t(total) * spec.split_ratio.second / ratio_denom);
    test_counts.push_back(test);
    train_counts.push_back(total - test);
  }

  // Inputs seen in train, per size; test draws that collide are redrawn so
  // the held-out split stays genuinely held out (small life boards collide
  // by pigeonhole).
  std::vector<std::set<std::string>> train_inputs(spec.sizes.size());

  auto build_split = [&](Split split, const std::vector<int>& counts) {
    std::vector<std::vector<TaskInstance>> groups;
    for (std::size_t si = 0; si < spec.sizes.size(); ++si) {
      int size = spec.sizes[si].size;
      std::vector<TaskInstance> group;
      group.reserve(counts[si]);
      for (int index = 0; index < counts[si]; ++index) {
        std::uint64_t seed = derive_seed(spec.master_seed, spec.task, size, split,
                                         std::uint64_t(index));
        TaskInstance inst = generate_instance(spec.task, size, seed, split, std::uint64_t(index));
        if (spec.task == TaskKind::life) {
          if (split == Split::train) {
            train_inputs[si].insert(grid_key(std::get<Grid>(inst.input)));
          } else {
            int attempts = 0;
            while (train_inputs[si].count(grid_key(std::get<Grid>(inst.input)))) {
              if (++attempts > 100000)
                throw std::runtime_error("build_dataset: cannot find held-out life input");
              seed = splitmix64(seed + 0x632be59bd9b4e019ull);
              inst = generate_instance(spec.task, size, seed, split, std::uint64_t(index));
            }
          }
        }
        group.push_back(std::move(inst));
      }
      groups.push_back(std::move(group));
    }
    if (spec.mix_ratio.empty()) {
      std::vector<TaskInstance> flat;
      for (auto& g : groups)
        for (auto& inst : g) flat.push_back(std::move(inst));
      return flat;
    }
    return interleave(std::move(groups));
  };

  std::vector<TaskInstance> out = build_split(Split::train, train_counts);
  std::vector<TaskInstance> test = build_split(Split::test, test_counts);
  for (auto& inst : test) out.push_back(std::move(inst));
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& dataset_path) {
  std::filesystem::path p = dataset_path;
  p.replace_extension(".manifest.json");
  return p;
}

DatasetManifest export_dataset(const std::vector<TaskInstance>& ds,
                               const std::filesystem::path& path, const DatasetSpec& spec) {
  std::string body;
  for (const auto& inst : ds) {
    body += instance_json(inst).dump();
    body += '\n';
  }

  DatasetManifest manifest;
  manifest.dataset = spec.resolved_name();
  manifest.file = path.filename().string();
  manifest.master_seed = spec.master_seed;
  std::map<int, SizeCounts> per_size;
  for (const auto& inst : ds) {
    auto& sc = per_size[inst.size];
    sc.size = inst.size;
    (inst.split == Split::train ? sc.train : sc.test)++;
    (inst.split == Split::train ? manifest.train_count : manifest.test_count)++;
  }
  for (auto& [size, sc] : per_size) manifest.per_size.push_back(sc);
  char digest[32];
  std::snprintf(digest, sizeof digest, "fnv1a64:%016" PRIx64, fnv1a64(body));
  manifest.digest = digest;

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path.string());
  out << body;
  out.close();
  if (!out) throw std::runtime_error("failed writing dataset file: " + path.string());

  json sizes = json::array();
  for (const auto& sc : manifest.per_size)
    sizes.push_back(json{{"size", sc.size}, {"train", sc.train}, {"test", sc.test}});
  json mj{{"dataset", manifest.dataset},
          {"file", manifest.file},
          {"master_seed", manifest.master_seed},
          {"counts",
           {{"train", manifest.train_count},
            {"test", manifest.test_count},
            {"total", manifest.train_count + manifest.test_count}}},
          {"per_size", sizes},
          {"digest", manifest.digest}};
  std::ofstream mout(manifest_path_for(path), std::ios::binary);
  if (!mout) throw std::runtime_error("cannot write manifest for: " + path.string());
  mout << mj.dump(2) << '\n';
  return manifest;
}

std::vector<TaskInstance> import_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path.string());
  std::vector<TaskInstance> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(instance_from_json(json::parse(line)));
  }
  return out;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
  json j = json::parse(in);
  DatasetManifest m;
  m.dataset = j.at("dataset").get<std::string>();
  m.file = j.at("file").get<std::string>();
  m.master_seed = j.at("master_seed").get<std::uint64_t>();
  m.train_count = j.at("counts").at("train").get<int>();
  m.test_count = j.at("counts").at("test").get<int>();
  for (const auto& s : j.at("per_size"))
    m.per_size.push_back(
        {s.at("size").get<int>(), s.at("train").get<int>(), s.at("test").get<int>()});
  m.digest = j.at("digest").get<std::string>();
  return m;
}

}  // namespace gridbench
