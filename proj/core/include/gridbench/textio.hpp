#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "gridbench/datagen.hpp"
#include "gridbench/types.hpp"

namespace gridbench {

/// Canonical 1D form: row-major, single space between entries, newline
/// between rows, no brackets.
std::string serialize_matrix(const Matrix& m);
std::string serialize_grid(const Grid& g);
std::string serialize_input(const TaskInstance& inst);
std::string serialize_target(const TaskInstance& inst);

enum class ParseError {
  none,
  no_structure_found,
  ragged_rows,
  non_numeric_token,
  missing_l_or_u,
};

std::string_view to_string(ParseError e);

template <typename T>
struct Parsed {
  std::optional<T> value;
  ParseError error = ParseError::none;

  bool ok() const { return value.has_value(); }
  explicit operator bool() const { return ok(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

/// Tolerant matrix reader. Accepts the canonical form plus bracketed rows,
/// comma delimiters, and ragged whitespace; lines without any digit are
/// treated as surrounding prose and skipped. Ragged row lengths are an error,
/// not a shrug.
Parsed<Matrix> parse_matrix(std::string_view text);

/// parse_matrix restricted to cells in {0,1}; anything else is reported as a
/// non-numeric token.
Parsed<Grid> parse_grid(std::string_view text);

/// Locates an "L" block followed by a "U" block (case-insensitive label, '='
/// or ':' optional, bracketed or bare rows) and parses each as a decimal
/// matrix.
Parsed<LUPair> parse_lu_pair(std::string_view text);

struct ParsedAnswer {
  std::string reasoning;      // text before the final closing think tag
  std::string answer_region;  // everything after it; whole text when no tag
};

/// Splits a response at the last "</think>". Total: absent tags leave the
/// whole text as the answer region.
ParsedAnswer strip_reasoning(std::string_view text);

struct PromptTemplate {
  std::string instruction;
  std::string answer_format;
  friend bool operator==(const PromptTemplate&, const PromptTemplate&) = default;
};

/// Task-keyed prompt wording, loadable from a plain-text template file with
/// [task.section] headers and {rows}/{cols}/{size} placeholders.
class PromptLibrary {
 public:
  static PromptLibrary builtin();
  static PromptLibrary load(const std::filesystem::path& path);
  static PromptLibrary parse(std::string_view text);

  const PromptTemplate& for_task(TaskKind task) const;

  friend bool operator==(const PromptLibrary&, const PromptLibrary&) = default;

 private:
  PromptTemplate transpose_;
  PromptTemplate life_;
  PromptTemplate lu_;
};

struct PromptBundle {
  Condition condition = Condition::text;
  std::string instruction;
  /// Canonical serialization under the text condition; image reference under
  /// the visual condition.
  std::string payload;
  std::string answer_format_note;
};

/// The instruction and format note are identical across conditions; only the
/// payload differs.
PromptBundle build_prompt(const TaskInstance& inst, Condition condition,
                          const PromptLibrary& lib);

/// Default name for the rendered input of an instance.
std::string image_reference(const TaskInstance& inst);

}  // namespace gridbench
