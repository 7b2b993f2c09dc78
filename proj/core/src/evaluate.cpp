#include "gridbench/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

#include <json.hpp>

#include "gridbench/tasks.hpp"

namespace gridbench {

using nlohmann::json;

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::correct: return "correct";
    case Verdict::incorrect: return "incorrect";
    case Verdict::malformed: return "malformed";
  }
  throw std::logic_error("bad Verdict");
}

Verdict verdict_from_string(std::string_view s) {
  if (s == "correct") return Verdict::correct;
  if (s == "incorrect") return Verdict::incorrect;
  if (s == "malformed") return Verdict::malformed;
  throw std::invalid_argument("unknown verdict: " + std::string(s));
}

std::string_view to_string(FailureCategory c) {
  switch (c) {
    case FailureCategory::none: return "none";
    case FailureCategory::no_structure_found: return "no-structure-found";
    case FailureCategory::ragged_rows: return "ragged-rows";
    case FailureCategory::non_numeric_token: return "non-numeric-token";
    case FailureCategory::missing_l_or_u: return "missing-L-or-U";
    case FailureCategory::shape: return "shape";
    case FailureCategory::empty_response: return "empty-response";
  }
  throw std::logic_error("bad FailureCategory");
}

FailureCategory failure_from_string(std::string_view s) {
  for (auto c : {FailureCategory::none, FailureCategory::no_structure_found,
                 FailureCategory::ragged_rows, FailureCategory::non_numeric_token,
                 FailureCategory::missing_l_or_u, FailureCategory::shape,
                 FailureCategory::empty_response})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown failure category: " + std::string(s));
}

FailureCategory failure_from_parse_error(ParseError e) {
  switch (e) {
    case ParseError::none: return FailureCategory::none;
    case ParseError::no_structure_found: return FailureCategory::no_structure_found;
    case ParseError::ragged_rows: return FailureCategory::ragged_rows;
    case ParseError::non_numeric_token: return FailureCategory::non_numeric_token;
    case ParseError::missing_l_or_u: return FailureCategory::missing_l_or_u;
  }
  throw std::logic_error("bad ParseError");
}

bool ErrorMask::all_zero() const {
  return std::all_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b == 0; });
}

namespace {

EvalRecord malformed_record(FailureCategory category) {
  EvalRecord rec;
  rec.verdict = Verdict::malformed;
  rec.failure = category;
  return rec;
}

EvalRecord record_from_mask(ErrorMask mask) {
  EvalRecord rec;
  rec.verdict = mask.all_zero() ? Verdict::correct : Verdict::incorrect;
  rec.mask = std::move(mask);
  return rec;
}

}  // namespace

EvalRecord score_transpose(const Parsed<Matrix>& pred, const Matrix& target) {
  if (!pred) return malformed_record(failure_from_parse_error(pred.error));
  if (!pred->same_shape(target)) return malformed_record(FailureCategory::shape);
  ErrorMask mask{target.rows(), target.cols(), {}};
  mask.bits.reserve(target.entries().size());
  for (int i = 0; i < target.rows(); ++i)
    for (int j = 0; j < target.cols(); ++j)
      mask.bits.push_back((*pred)(i, j) != target(i, j) ? 1 : 0);
  return record_from_mask(std::move(mask));
}

EvalRecord score_life(const Parsed<Grid>& pred, const Grid& target) {
  if (!pred) return malformed_record(failure_from_parse_error(pred.error));
  if (!pred->same_shape(target)) return malformed_record(FailureCategory::shape);
  ErrorMask mask{target.rows(), target.cols(), {}};
  mask.bits.reserve(target.cells().size());
  for (int i = 0; i < target.rows(); ++i)
    for (int j = 0; j < target.cols(); ++j)
      mask.bits.push_back((*pred)(i, j) != target(i, j) ? 1 : 0);
  return record_from_mask(std::move(mask));
}

EvalRecord score_lu(const Parsed<LUPair>& pred, const Matrix& target_input,
                    const Tolerances& tol) {
  if (!pred) return malformed_record(failure_from_parse_error(pred.error));
  LuVerdict verdict = lu_verify(target_input, *pred, tol);
  if (!verdict.accepted && verdict.reason == LuReason::shape)
    return malformed_record(FailureCategory::shape);

  int n = target_input.rows();
  ErrorMask mask{n, n, std::vector<std::uint8_t>(std::size_t(n) * n, 0)};
  Matrix residual = matmul(pred->l, pred->u);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(residual(i, j) - target_input(i, j)) > tol.reconstruction_abs)
        mask.bits[std::size_t(i) * n + j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(pred->l(i, j)) > tol.triangular_abs) mask.bits[std::size_t(i) * n + j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(pred->u(i, j)) > tol.triangular_abs) mask.bits[std::size_t(i) * n + j] = 1;

  EvalRecord rec;
  rec.verdict = verdict.accepted ? Verdict::correct : Verdict::incorrect;
  rec.mask = std::move(mask);
  return rec;
}

std::vector<AccuracyRow> aggregate_accuracy(std::span<const EvalRecord> records,
                                            GroupBy group_by) {
  if (records.empty()) throw std::invalid_argument("aggregate_accuracy: empty record set");
  std::map<std::tuple<std::string, int, std::string>, AccuracyRow> groups;
  for (const auto& rec : records) {
    std::tuple<std::string, int, std::string> key{
        group_by.task ? std::string(to_string(rec.task)) : std::string(),
        group_by.size ? rec.size : -1,
        group_by.condition ? std::string(to_string(rec.condition)) : std::string()};
    AccuracyRow& row = groups[key];
    row.task = std::get<0>(key);
    row.size = std::get<1>(key);
    row.condition = std::get<2>(key);
    row.total++;
    switch (rec.verdict) {
      case Verdict::correct: row.correct++; break;
      case Verdict::incorrect: row.incorrect++; break;
      case Verdict::malformed: row.malformed++; break;
    }
  }
  std::vector<AccuracyRow> out;
  out.reserve(groups.size());
  for (auto& [key, row] : groups) {
    row.accuracy = double(row.correct) / row.total;
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

json record_json(const EvalRecord& rec) {
  json j{{"instance_id", rec.instance_id},
         {"task", to_string(rec.task)},
         {"size", rec.size},
         {"condition", to_string(rec.condition)},
         {"verdict", to_string(rec.verdict)},
         {"failure_category",
          rec.failure == FailureCategory::none ? json(nullptr) : json(to_string(rec.failure))}};
  if (rec.mask) {
    json bits = json::array();
    for (auto b : rec.mask->bits) bits.push_back(int(b));
    j["mask"] = json{{"rows", rec.mask->rows}, {"cols", rec.mask->cols}, {"bits", bits}};
  } else {
    j["mask"] = nullptr;
  }
  return j;
}

EvalRecord record_from_json(const json& j) {
  EvalRecord rec;
  rec.instance_id = j.at("instance_id").get<std::string>();
  rec.task = task_from_string(j.at("task").get<std::string>());
  rec.size = j.at("size").get<int>();
  rec.condition = condition_from_string(j.at("condition").get<std::string>());
  rec.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (!j.at("failure_category").is_null())
    rec.failure = failure_from_string(j.at("failure_category").get<std::string>());
  if (!j.at("mask").is_null()) {
    const json& m = j.at("mask");
    ErrorMask mask{m.at("rows").get<int>(), m.at("cols").get<int>(), {}};
    for (const auto& b : m.at("bits")) mask.bits.push_back(std::uint8_t(b.get<int>()));
    rec.mask = std::move(mask);
  }
  return rec;
}

}  // namespace

void write_eval_records(const std::filesystem::path& path,
                        std::span<const EvalRecord> records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write eval records: " + path.string());
  for (const auto& rec : records) out << record_json(rec).dump() << '\n';
  if (!out) throw std::runtime_error("failed writing eval records: " + path.string());
}

std::vector<EvalRecord> read_eval_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open eval records: " + path.string());
  std::vector<EvalRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_json(json::parse(line)));
  }
  return out;
}

}  // namespace gridbench
