// Prompt templates and their audit. Prompts state the question, list the
// matrices and the answer grammar, and nothing about how the instance was
// built.

#ifndef TRAPDOOR_HARNESS_PROMPT_HPP_
#define TRAPDOOR_HARNESS_PROMPT_HPP_

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "trapdoor/construct/types.hpp"
#include "trapdoor/harness/answer.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

namespace detail {

inline std::string matrix_text(BigMatrix const& m) {
  std::ostringstream out;
  out << '[';
  for (int i = 0; i < m.dim; ++i) {
    out << (i ? ", [" : "[");
    for (int j = 0; j < m.dim; ++j)
      out << (j ? ", " : "") << m(i, j);
    out << ']';
  }
  out << ']';
  return out.str();
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

} // namespace detail

inline std::string render_prompt(Instance const& inst, Grammar grammar = Grammar::merged) {
  std::ostringstream out;
  std::string const group = inst.dim == 2 ? "SL(2, Z)" : "SL(3, Z)";
  out << "Let H be the subgroup of " << group << " generated by the following " << inst.generators.size()
      << " integer matrices (rows listed top to bottom):\n\n";
  for (std::size_t k = 0; k < inst.generators.size(); ++k)
    out << "g" << k + 1 << " = " << detail::matrix_text(inst.generators[k]) << "\n";
  out << "\n";
  switch (inst.question) {
    case QuestionKind::membership_list:
      out << "Candidate matrices:\n\n";
      for (std::size_t k = 0; k < inst.candidates.size(); ++k)
        out << candidate_id(k) << " = " << detail::matrix_text(inst.candidates[k]) << "\n";
      out << "\nFor each candidate, decide whether it is an element of H.\n"
          << "Answer with a tuple of " << inst.candidates.size()
          << " entries, YES or NO, in candidate order, for example (YES, NO, ...).\n";
      break;
    case QuestionKind::prime_list_yesno:
      out << "Primes:\n\n";
      for (u64 p : inst.primes)
        out << p << "\n";
      out << "\nFor each prime p above, decide whether the reduction of H modulo p is all of SL(3, F_p).\n"
          << "Answer with a tuple of " << inst.primes.size()
          << " entries, YES or NO, in the order the primes are listed.\n";
      break;
    case QuestionKind::exact_index_or_unknown:
      out << "Determine the index [" << group << " : H].\n";
      if (grammar == Grammar::merged)
        out << "Answer with the exact index as a decimal integer, or with the literal token "
               "infinite_or_unknown if you cannot give an exact integer.\n";
      else
        out << "Answer with the exact index as a decimal integer, with the literal token infinite "
               "if the index is infinite, or with the literal token unknown if you cannot decide.\n";
      break;
  }
  out << "Give the final answer on its own line, prefixed by \"Final answer:\".\n";
  return out.str();
}

// Phrases a prompt must never contain: finiteness assertions and the
// names of the construction's ingredients.
inline std::vector<std::string> const& forbidden_prompt_phrases() {
  static std::vector<std::string> const phrases{
      "finite index", "finite-index", "has finite", "congruence", "principal", "level",  "octahedral",
      "unipotent",    "sanov",        "orthogonal", "invariant", "planted",   "trapdoor", "scrambl",
      "nielsen",      "aschbacher",   "gamma(",     "kernel",    "secret",    "n =",      "k ="};
  return phrases;
}

// Empty result = the prompt honors the template contract.
inline std::vector<std::string> audit_prompt(std::string const& prompt, Instance const& inst,
                                             Grammar grammar = Grammar::merged) {
  std::vector<std::string> problems;
  std::string const low = detail::lower(prompt);
  for (auto const& phrase : forbidden_prompt_phrases())
    if (low.find(phrase) != std::string::npos)
      problems.push_back("forbidden phrase '" + phrase + "'");
  if (inst.question == QuestionKind::exact_index_or_unknown) {
    if (grammar == Grammar::merged && prompt.find("infinite_or_unknown") == std::string::npos)
      problems.push_back("missing token infinite_or_unknown");
    if (grammar == Grammar::split_infinite
        && (prompt.find("token infinite ") == std::string::npos || prompt.find("token unknown") == std::string::npos))
      problems.push_back("missing split tokens infinite / unknown");
  }
  for (u64 p : inst.primes)
    if (prompt.find("\n" + std::to_string(p) + "\n") == std::string::npos)
      problems.push_back("prime " + std::to_string(p) + " not listed in full");
  for (auto const& g : inst.generators)
    if (prompt.find(detail::matrix_text(g)) == std::string::npos)
      problems.push_back("a generator is missing");
  for (auto const& c : inst.candidates)
    if (prompt.find(detail::matrix_text(c)) == std::string::npos)
      problems.push_back("a candidate is missing");
  return problems;
}

} // namespace trapdoor

#endif
