// Answer parsing and four-way calibration scoring.

#ifndef TRAPDOOR_HARNESS_ANSWER_HPP_
#define TRAPDOOR_HARNESS_ANSWER_HPP_

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trapdoor/construct/types.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/integer.hpp"

namespace trapdoor {

// merged: "infinite" is one of the abstain spellings (single token
// infinite_or_unknown). split: "infinite" is a commitment to INFINITE and
// only "unknown"-style answers abstain.
enum class Grammar { merged, split_infinite };

struct ParsedAnswer {
  enum class Kind { bits, integer, infinite, abstain };
  Kind kind = Kind::abstain;
  std::vector<bool> bits;
  Int value = 0;
};

struct AnswerRecord {
  std::string instance_id;
  Family family = Family::I;
  std::string raw_text;
  std::optional<ParsedAnswer> parsed; // present iff parse_ok
  bool parse_ok = false;
  std::optional<double> wall_time_s;
  std::string solver;
};

namespace detail {

inline std::string normalize_answer(std::string const& raw) {
  std::string s;
  bool space = false;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(raw[i]);
    // U+2019 (right single quote) as an apostrophe
    if (c == 0xE2 && i + 2 < raw.size() && static_cast<unsigned char>(raw[i + 1]) == 0x80
        && static_cast<unsigned char>(raw[i + 2]) == 0x99) {
      c = '\'';
      i += 2;
    }
    if (std::isspace(c)) {
      space = !s.empty();
      continue;
    }
    if (space)
      s += ' ';
    space = false;
    s += static_cast<char>(std::tolower(c));
  }
  static std::string const prefix = "final answer:";
  if (s.rfind(prefix, 0) == 0) {
    s.erase(0, prefix.size());
    if (!s.empty() && s.front() == ' ')
      s.erase(0, 1);
  }
  return s;
}

inline std::optional<Int> parse_index_integer(std::string const& s) {
  static std::regex const plain(R"(\+?[0-9]+)");
  static std::regex const grouped(R"(\+?[0-9]{1,3}(,[0-9]{3})+)");
  if (!std::regex_match(s, plain) && !std::regex_match(s, grouped))
    return std::nullopt;
  std::string digits;
  for (char c : s)
    if (c >= '0' && c <= '9')
      digits += c;
  return parse_int(digits);
}

inline std::optional<std::vector<bool>> parse_yes_no(std::string s, std::size_t expected) {
  if (s.size() >= 2 && ((s.front() == '(' && s.back() == ')') || (s.front() == '[' && s.back() == ']')))
    s = s.substr(1, s.size() - 2);
  for (char& c : s)
    if (c == ',' || c == ';')
      c = ' ';
  std::istringstream in(s);
  std::vector<bool> bits;
  std::string tok;
  while (in >> tok) {
    if (tok == "yes")
      bits.push_back(true);
    else if (tok == "no")
      bits.push_back(false);
    else
      return std::nullopt;
  }
  if (bits.empty() || (expected > 0 && bits.size() != expected))
    return std::nullopt;
  return bits;
}

} // namespace detail

// `expected` is the tuple length for list questions (0 = any length).
inline AnswerRecord parse_answer(std::string const& raw, Family family, std::size_t expected = 0,
                                 Grammar grammar = Grammar::merged) {
  AnswerRecord rec;
  rec.family = family;
  rec.raw_text = raw;
  std::string const s = detail::normalize_answer(raw);
  ParsedAnswer a;
  bool ok = false;
  bool const abstain_token = s == "infinite_or_unknown" || s == "don't know" || s == "dont know" || s == "unknown";
  if (abstain_token || s == "infinite") {
    a.kind = s == "infinite" && grammar == Grammar::split_infinite ? ParsedAnswer::Kind::infinite
                                                                  : ParsedAnswer::Kind::abstain;
    ok = true;
  } else if (question_kind(family) == QuestionKind::exact_index_or_unknown) {
    if (auto v = detail::parse_index_integer(s)) {
      a.kind = ParsedAnswer::Kind::integer;
      a.value = *v;
      ok = true;
    }
  } else if (auto bits = detail::parse_yes_no(s, expected)) {
    a.kind = ParsedAnswer::Kind::bits;
    a.bits = *bits;
    ok = true;
  }
  // "infinite" on a list question is not an answer to it.
  if (ok && a.kind == ParsedAnswer::Kind::infinite && question_kind(family) != QuestionKind::exact_index_or_unknown)
    ok = false;
  if (ok) {
    rec.parsed = a;
    rec.parse_ok = true;
  }
  return rec;
}

enum class Cell { commit_correct, commit_wrong, abstain_correct, abstain_wrong };

inline constexpr std::array<Cell, 4> all_cells{Cell::commit_correct, Cell::commit_wrong, Cell::abstain_correct,
                                               Cell::abstain_wrong};

inline std::string cell_name(Cell c) {
  switch (c) {
    case Cell::commit_correct: return "commit_correct";
    case Cell::commit_wrong: return "commit_wrong";
    case Cell::abstain_correct: return "abstain_correct";
    case Cell::abstain_wrong: return "abstain_wrong";
  }
  return "?";
}

struct ScoreOutcome {
  Cell cell = Cell::commit_wrong;
  std::string detail;
};

// Pure function of the parsed answer and the truth.
inline ScoreOutcome score(AnswerRecord const& a, GroundTruth const& t, Grammar grammar = Grammar::merged) {
  if (a.family != t.family)
    fail("answer for family ", family_name(a.family), " scored against truth for family ", family_name(t.family));
  if (!a.parse_ok)
    return {Cell::commit_wrong, detail::normalize_answer(a.raw_text).empty() ? "no-output" : "unparseable"};
  auto const& p = *a.parsed;
  switch (question_kind(t.family)) {
    case QuestionKind::membership_list:
    case QuestionKind::prime_list_yesno: {
      if (p.kind == ParsedAnswer::Kind::abstain)
        return {Cell::commit_wrong, "abstained on a list question"};
      auto const& want = t.family == Family::I ? t.membership : t.surjective;
      if (p.bits.size() != want.size())
        return {Cell::commit_wrong, "tuple length mismatch"};
      for (std::size_t k = 0; k < want.size(); ++k)
        if (p.bits[k] != want[k])
          return {Cell::commit_wrong, "position " + std::to_string(k + 1) + " wrong"};
      return {Cell::commit_correct, "all positions correct"};
    }
    case QuestionKind::exact_index_or_unknown: break;
  }
  if (!t.index)
    fail("truth for '", t.id, "' has no index");
  IndexValue const& want = *t.index;
  switch (p.kind) {
    case ParsedAnswer::Kind::integer:
      if (!want.infinite && p.value == want.value)
        return {Cell::commit_correct, "index matches"};
      return {Cell::commit_wrong, "committed " + p.value.str() + ", truth " + want.str()};
    case ParsedAnswer::Kind::infinite:
      if (want.infinite)
        return {Cell::commit_correct, "index is infinite"};
      return {Cell::commit_wrong, "committed INFINITE, truth " + want.str()};
    case ParsedAnswer::Kind::abstain:
      if (!want.infinite)
        return {Cell::abstain_wrong, "truth is the finite index " + want.str()};
      // The merged token covers infinite; the split grammar credits a
      // plain "unknown" only where abstaining is an accepted answer.
      if (grammar == Grammar::merged || t.accepted_abstain)
        return {Cell::abstain_correct, "truth is INFINITE"};
      return {Cell::abstain_wrong, "truth is INFINITE and the grammar offered 'infinite'"};
    case ParsedAnswer::Kind::bits: break;
  }
  return {Cell::commit_wrong, "answer kind does not fit the question"};
}

struct ScoredRecord {
  AnswerRecord answer;
  ScoreOutcome outcome;
};

struct Scorecard {
  std::map<Family, std::array<std::size_t, 4>> per_family;
  std::array<std::size_t, 4> total{};
  std::map<Cell, std::vector<std::string>> ids;
  std::map<std::string, double> wall_time_s;
  std::vector<std::string> notes;

  std::size_t count(Cell c) const { return total[static_cast<std::size_t>(c)]; }
  std::size_t records() const { return total[0] + total[1] + total[2] + total[3]; }
};

inline Scorecard aggregate(std::vector<ScoredRecord> const& scored) {
  Scorecard card;
  for (auto const& r : scored) {
    auto const c = static_cast<std::size_t>(r.outcome.cell);
    ++card.total[c];
    ++card.per_family[r.answer.family][c];
    card.ids[r.outcome.cell].push_back(r.answer.instance_id);
    if (r.answer.wall_time_s)
      card.wall_time_s[r.answer.instance_id] = *r.answer.wall_time_s;
    if (r.outcome.detail == "no-output")
      card.notes.push_back(r.answer.instance_id + ": no output (counted as commit_wrong)");
  }
  return card;
}

namespace detail {

inline std::string format_duration(double seconds) {
  if (seconds < 60)
    return std::to_string(static_cast<long>(std::lround(seconds))) + " sec";
  return std::to_string(static_cast<long>(std::lround(seconds / 60))) + " min";
}

inline std::string crosstab_cell(ScoredRecord const& r) {
  std::string s = cell_name(r.outcome.cell);
  std::string inside = r.answer.raw_text.empty() ? "no output" : r.answer.raw_text;
  if (r.answer.wall_time_s)
    inside += ", " + format_duration(*r.answer.wall_time_s);
  return s + " (" + inside + ")";
}

} // namespace detail

// Solver-by-instance grid: one row per solver label, one column per
// instance in first-seen order, each cell "<outcome> (<answer>, <time>)".
inline std::string render_crosstab(std::vector<ScoredRecord> const& scored) {
  std::vector<std::string> solvers, columns;
  std::map<std::pair<std::string, std::string>, std::string> cells;
  for (auto const& r : scored) {
    std::string solver = r.answer.solver.empty() ? "-" : r.answer.solver;
    if (std::find(solvers.begin(), solvers.end(), solver) == solvers.end())
      solvers.push_back(solver);
    if (std::find(columns.begin(), columns.end(), r.answer.instance_id) == columns.end())
      columns.push_back(r.answer.instance_id);
    cells[{solver, r.answer.instance_id}] = detail::crosstab_cell(r);
  }
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{""};
  header.insert(header.end(), columns.begin(), columns.end());
  table.push_back(header);
  for (auto const& s : solvers) {
    std::vector<std::string> row{s};
    for (auto const& c : columns) {
      auto it = cells.find({s, c});
      row.push_back(it == cells.end() ? "" : it->second);
    }
    table.push_back(row);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (auto const& row : table)
    for (std::size_t k = 0; k < row.size(); ++k)
      width[k] = std::max(width[k], row[k].size());
  std::ostringstream out;
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t k = 0; k < table[r].size(); ++k) {
      if (k > 0)
        out << " | ";
      out << table[r][k];
      if (k + 1 < table[r].size())
        out << std::string(width[k] - table[r][k].size(), ' ');
    }
    out << '\n';
    if (r == 0) {
      for (std::size_t k = 0; k < width.size(); ++k)
        out << (k > 0 ? "-+-" : "") << std::string(width[k], '-');
      out << '\n';
    }
  }
  return out.str();
}

} // namespace trapdoor

#endif
