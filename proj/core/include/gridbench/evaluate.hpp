#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridbench/textio.hpp"
#include "gridbench/types.hpp"

namespace gridbench {

enum class Verdict { correct, incorrect, malformed };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

enum class FailureCategory {
  none,
  no_structure_found,
  ragged_rows,
  non_numeric_token,
  missing_l_or_u,
  shape,
  empty_response,
};

std::string_view to_string(FailureCategory c);
FailureCategory failure_from_string(std::string_view s);
FailureCategory failure_from_parse_error(ParseError e);

struct ErrorMask {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> bits;  // row-major, 1 marks a cell error

  bool all_zero() const;
  friend bool operator==(const ErrorMask&, const ErrorMask&) = default;
};

struct EvalRecord {
  std::string instance_id;
  TaskKind task = TaskKind::transpose;
  int size = 0;
  Condition condition = Condition::text;
  Verdict verdict = Verdict::malformed;
  FailureCategory failure = FailureCategory::none;
  std::optional<ErrorMask> mask;  // absent for malformed outputs
};

/// Cell-by-cell comparison against the gold transpose. Shape mismatches and
/// parse failures are malformed; malformed records carry no mask.
EvalRecord score_transpose(const Parsed<Matrix>& pred, const Matrix& target);

EvalRecord score_life(const Parsed<Grid>& pred, const Grid& target);

/// Functional scoring: the verdict comes from lu_verify against the instance
/// input. The mask marks positions where |(L*U - A)| exceeds the
/// reconstruction tolerance, plus any triangularity violations at their own
/// positions.
EvalRecord score_lu(const Parsed<LUPair>& pred, const Matrix& target_input,
                    const Tolerances& tol = {});

struct GroupBy {
  bool task = true;
  bool size = true;
  bool condition = true;
};

struct AccuracyRow {
  std::string task;       // empty when not grouped by task
  int size = -1;          // -1 when not grouped by size
  std::string condition;  // empty when not grouped by condition
  int total = 0;
  int correct = 0;
  int incorrect = 0;
  int malformed = 0;
  double accuracy = 0.0;
};

/// accuracy = correct / total per group; malformed counts in the denominator.
/// Throws on an empty record set.
std::vector<AccuracyRow> aggregate_accuracy(std::span<const EvalRecord> records,
                                            GroupBy group_by = {});

/// Line-delimited record files.
void write_eval_records(const std::filesystem::path& path,
                        std::span<const EvalRecord> records);
std::vector<EvalRecord> read_eval_records(const std::filesystem::path& path);

}  // namespace gridbench
