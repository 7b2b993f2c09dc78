#include "gridbench/textio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace gridbench {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool has_digit(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_digit(c); });
}

std::optional<double> parse_number_token(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (!tok.empty() && tok.back() == '.') tok.remove_suffix(1);  // "5." reads as 5
  if (tok.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

bool is_token_delim(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == ',' || c == ';' || c == '[' || c == ']';
}

/// Splits one row of text into numeric values. Returns nullopt on a token
/// that is not a number.
std::optional<std::vector<double>> parse_row(std::string_view line) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_token_delim(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !is_token_delim(line[i])) ++i;
    auto v = parse_number_token(line.substr(start, i - start));
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

/// Innermost bracket groups, in textual order. A group qualifies when it
/// contains no nested bracket and at least one digit.
std::vector<std::string_view> numeric_bracket_groups(std::string_view text) {
  std::vector<std::string_view> groups;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '[') {
      stack.push_back(i);
    } else if (text[i] == ']' && !stack.empty()) {
      std::size_t open = stack.back();
      stack.pop_back();
      std::string_view inner = text.substr(open + 1, i - open - 1);
      if (inner.find('[') == std::string_view::npos && has_digit(inner))
        groups.push_back(inner);
    }
  }
  return groups;
}

Parsed<Matrix> rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {std::nullopt, ParseError::no_structure_found};
  std::size_t width = rows.front().size();
  std::vector<double> entries;
  for (const auto& row : rows) {
    if (row.size() != width) return {std::nullopt, ParseError::ragged_rows};
    entries.insert(entries.end(), row.begin(), row.end());
  }
  if (width == 0) return {std::nullopt, ParseError::no_structure_found};
  return {Matrix(int(rows.size()), int(width), std::move(entries)), ParseError::none};
}

}  // namespace

std::string serialize_matrix(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    if (i > 0) out += '\n';
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_number(m(i, j));
    }
  }
  return out;
}

std::string serialize_grid(const Grid& g) {
  std::string out;
  for (int i = 0; i < g.rows(); ++i) {
    if (i > 0) out += '\n';
    for (int j = 0; j < g.cols(); ++j) {
      if (j > 0) out += ' ';
      out += char('0' + g(i, j));
    }
  }
  return out;
}

std::string serialize_input(const TaskInstance& inst) {
  if (const auto* m = std::get_if<Matrix>(&inst.input)) return serialize_matrix(*m);
  return serialize_grid(std::get<Grid>(inst.input));
}

std::string serialize_target(const TaskInstance& inst) {
  if (const auto* m = std::get_if<Matrix>(&inst.target)) return serialize_matrix(*m);
  if (const auto* g = std::get_if<Grid>(&inst.target)) return serialize_grid(*g);
  const auto& pair = std::get<LUPair>(inst.target);
  return "L =\n" + serialize_matrix(pair.l) + "\nU =\n" + serialize_matrix(pair.u);
}

std::string_view to_string(ParseError e) {
  switch (e) {
    case ParseError::none: return "none";
    case ParseError::no_structure_found: return "no-structure-found";
    case ParseError::ragged_rows: return "ragged-rows";
    case ParseError::non_numeric_token: return "non-numeric-token";
    case ParseError::missing_l_or_u: return "missing-L-or-U";
  }
  throw std::logic_error("bad ParseError");
}

Parsed<Matrix> parse_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;

  auto groups = numeric_bracket_groups(text);
  if (!groups.empty()) {
    for (auto group : groups) {
      auto row = parse_row(group);
      if (!row) return {std::nullopt, ParseError::non_numeric_token};
      if (!row->empty()) rows.push_back(std::move(*row));
    }
    return rows_to_matrix(rows);
  }

  // Line mode: one row per line; lines without any digit are prose.
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (!has_digit(line)) continue;
    auto row = parse_row(line);
    if (!row) return {std::nullopt, ParseError::non_numeric_token};
    if (!row->empty()) rows.push_back(std::move(*row));
  }
  return rows_to_matrix(rows);
}

Parsed<Grid> parse_grid(std::string_view text) {
  auto m = parse_matrix(text);
  if (!m) return {std::nullopt, m.error};
  std::vector<std::uint8_t> cells;
  cells.reserve(m->entries().size());
  for (double v : m->entries()) {
    if (v != 0.0 && v != 1.0) return {std::nullopt, ParseError::non_numeric_token};
    cells.push_back(std::uint8_t(v));
  }
  return {Grid(m->rows(), m->cols(), std::move(cells)), ParseError::none};
}

namespace {

struct LabelMarker {
  std::size_t pos = 0;            // position of the label letter
  std::size_t content_start = 0;  // after the label and any '=' / ':'
  bool is_l = false;
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<LabelMarker> find_label_markers(std::string_view text) {
  std::vector<LabelMarker> markers;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != 'L' && c != 'l' && c != 'U' && c != 'u') continue;
    if (i > 0 && is_word_char(text[i - 1])) continue;
    if (i + 1 < text.size() && is_word_char(text[i + 1])) continue;
    std::size_t j = i + 1;
    while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
    if (j < text.size() && (text[j] == '=' || text[j] == ':')) ++j;
    markers.push_back({i, j, c == 'L' || c == 'l'});
  }
  return markers;
}

}  // namespace

Parsed<LUPair> parse_lu_pair(std::string_view text) {
  auto markers = find_label_markers(text);

  // Last L that still has a U after it, paired with the first such U.
  int l_idx = -1, u_idx = -1;
  for (int i = 0; i < int(markers.size()); ++i) {
    if (!markers[i].is_l) continue;
    for (int j = i + 1; j < int(markers.size()); ++j) {
      if (!markers[j].is_l) {
        l_idx = i;
        u_idx = j;
        break;
      }
    }
  }
  if (l_idx < 0) return {std::nullopt, ParseError::missing_l_or_u};

  std::string_view l_block = text.substr(markers[l_idx].content_start,
                                         markers[u_idx].pos - markers[l_idx].content_start);
  std::size_t u_end = text.size();
  if (u_idx + 1 < int(markers.size())) u_end = markers[u_idx + 1].pos;
  std::string_view u_block =
      text.substr(markers[u_idx].content_start, u_end - markers[u_idx].content_start);

  auto l = parse_matrix(l_block);
  if (!l)
    return {std::nullopt, l.error == ParseError::no_structure_found ? ParseError::missing_l_or_u
                                                                    : l.error};
  auto u = parse_matrix(u_block);
  if (!u)
    return {std::nullopt, u.error == ParseError::no_structure_found ? ParseError::missing_l_or_u
                                                                    : u.error};
  return {LUPair{std::move(*l.value), std::move(*u.value)}, ParseError::none};
}

ParsedAnswer strip_reasoning(std::string_view text) {
  static constexpr std::string_view kCloseTag = "</think>";
  std::size_t pos = text.rfind(kCloseTag);
  if (pos == std::string_view::npos) return {"", std::string(text)};
  return {std::string(text.substr(0, pos)), std::string(text.substr(pos + kCloseTag.size()))};
}

namespace {

constexpr std::string_view kBuiltinTemplates = R"(# Prompt wording, one block per task and section. Placeholders {rows},
# {cols}, {size} and {task} are substituted per instance. The instruction is
# shared verbatim between the text and visual conditions.

[transpose.instruction]
You are given a {rows}x{cols} integer matrix. Compute its transpose: the
entry at row i, column j of the output equals the entry at row j, column i
of the input.

[transpose.answer_format]
Reason step by step inside <think>...</think> tags. After the closing
</think> tag, output only the transposed matrix: one row per line, entries
separated by single spaces.

[life.instruction]
You are given a {rows}x{cols} board from Conway's Game of Life, where 1 is a
live cell and 0 is a dead cell. Compute the next generation under the
standard rules: a live cell stays live with exactly 2 or 3 live neighbors in
its 8-cell neighborhood, a dead cell becomes live with exactly 3 live
neighbors, and every other cell is dead. Cells outside the board are dead.

[life.answer_format]
Reason step by step inside <think>...</think> tags. After the closing
</think> tag, output only the next-generation board: one row per line, cells
separated by single spaces.

[lu.instruction]
You are given a {rows}x{cols} matrix A. Find matrices L and U such that
A = L*U, where L is lower triangular and U is upper triangular. The matrix
is constructed so that a valid factorization without row exchanges exists.

[lu.answer_format]
Reason step by step inside <think>...</think> tags. After the closing
</think> tag, output the factors as two labeled blocks: a line "L ="
followed by the rows of L, then a line "U =" followed by the rows of U,
entries separated by single spaces.
)";

std::string trim_blank_edges(std::string s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && (s[begin] == '\n' || s[begin] == '\r')) ++begin;
  while (end > begin && (s[end - 1] == '\n' || s[end - 1] == '\r' || s[end - 1] == ' ')) --end;
  return s.substr(begin, end - begin);
}

std::string substitute_placeholders(std::string text, const TaskInstance& inst) {
  int rows = 0, cols = 0;
  if (const auto* m = std::get_if<Matrix>(&inst.input)) {
    rows = m->rows();
    cols = m->cols();
  } else {
    const auto& g = std::get<Grid>(inst.input);
    rows = g.rows();
    cols = g.cols();
  }
  const std::pair<std::string_view, std::string> subs[] = {
      {"{rows}", std::to_string(rows)},
      {"{cols}", std::to_string(cols)},
      {"{size}", std::to_string(inst.size)},
      {"{task}", std::string(to_string(inst.task))},
  };
  for (const auto& [key, value] : subs) {
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
      text.replace(pos, key.size(), value);
      pos += value.size();
    }
  }
  return text;
}

}  // namespace

PromptLibrary PromptLibrary::parse(std::string_view text) {
  PromptLibrary lib;
  std::string* current = nullptr;
  std::string section;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (!line.empty() && line.front() == '#') continue;
    if (line.size() >= 2 && line.front() == '[' && line.back() == ']') {
      if (current) *current = trim_blank_edges(std::move(*current));
      section = std::string(line.substr(1, line.size() - 2));
      PromptTemplate* tpl = nullptr;
      if (section.starts_with("transpose.")) tpl = &lib.transpose_;
      else if (section.starts_with("life.")) tpl = &lib.life_;
      else if (section.starts_with("lu.")) tpl = &lib.lu_;
      if (!tpl) throw std::invalid_argument("prompt template: unknown section [" + section + "]");
      if (section.ends_with(".instruction")) current = &tpl->instruction;
      else if (section.ends_with(".answer_format")) current = &tpl->answer_format;
      else throw std::invalid_argument("prompt template: unknown section [" + section + "]");
      continue;
    }
    if (current) {
      *current += line;
      *current += '\n';
    }
  }
  if (current) *current = trim_blank_edges(std::move(*current));
  for (const auto* tpl : {&lib.transpose_, &lib.life_, &lib.lu_}) {
    if (tpl->instruction.empty() || tpl->answer_format.empty())
      throw std::invalid_argument("prompt template: missing section for a task");
  }
  return lib;
}

PromptLibrary PromptLibrary::builtin() { return parse(kBuiltinTemplates); }

PromptLibrary PromptLibrary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open prompt template file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const PromptTemplate& PromptLibrary::for_task(TaskKind task) const {
  switch (task) {
    case TaskKind::transpose: return transpose_;
    case TaskKind::life: return life_;
    case TaskKind::lu: return lu_;
  }
  throw std::logic_error("bad TaskKind");
}

PromptBundle build_prompt(const TaskInstance& inst, Condition condition,
                          const PromptLibrary& lib) {
  const PromptTemplate& tpl = lib.for_task(inst.task);
  PromptBundle bundle;
  bundle.condition = condition;
  bundle.instruction = substitute_placeholders(tpl.instruction, inst);
  bundle.answer_format_note = substitute_placeholders(tpl.answer_format, inst);
  bundle.payload =
      condition == Condition::text ? serialize_input(inst) : image_reference(inst);
  return bundle;
}

std::string image_reference(const TaskInstance& inst) { return inst.id + ".png"; }

}  // namespace gridbench
