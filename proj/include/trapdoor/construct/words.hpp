// Words over a finite generator alphabet. Letter k > 0 stands for
// generator k-1, letter -k for its inverse.

#ifndef TRAPDOOR_CONSTRUCT_WORDS_HPP_
#define TRAPDOOR_CONSTRUCT_WORDS_HPP_

#include <cstdlib>
#include <string>
#include <vector>

#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

using Word = std::vector<int>;

inline int letter(std::size_t gen, int exponent) {
  return exponent > 0 ? static_cast<int>(gen) + 1 : -(static_cast<int>(gen) + 1);
}

inline std::size_t letter_gen(int l) { return static_cast<std::size_t>(std::abs(l) - 1); }

inline Word free_reduce(Word const& w) {
  Word out;
  out.reserve(w.size());
  for (int l : w) {
    if (l == 0)
      fail("letter 0 is not valid in a word");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline Word inverse(Word const& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out)
    l = -l;
  return out;
}

inline Word concat(Word const& a, Word const& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

// Word rendered with a..z for the first 26 generators and uppercase for
// inverses, e.g. "abA"; larger alphabets use "g12", "G12".
inline std::string word_to_string(Word const& w) {
  std::string s;
  bool small = true;
  for (int l : w)
    if (std::abs(l) > 26)
      small = false;
  for (int l : w) {
    if (small) {
      char c = static_cast<char>('a' + std::abs(l) - 1);
      s += l > 0 ? c : static_cast<char>(c - 'a' + 'A');
    } else {
      s += (l > 0 ? "g" : "G") + std::to_string(std::abs(l));
    }
  }
  return s;
}

inline BigMatrix evaluate(Word const& w, std::vector<BigMatrix> const& gens,
                          std::vector<BigMatrix> const& inverses) {
  if (gens.empty())
    fail("cannot evaluate a word over an empty alphabet");
  BigMatrix r = BigMatrix::identity(gens.front().dim);
  for (int l : w) {
    std::size_t g = letter_gen(l);
    if (g >= gens.size())
      fail("word letter ", l, " out of range for ", gens.size(), " generators");
    r = r * (l > 0 ? gens[g] : inverses[g]);
  }
  return r;
}

inline std::vector<BigMatrix> inverses_of(std::vector<BigMatrix> const& gens) {
  std::vector<BigMatrix> inv;
  inv.reserve(gens.size());
  for (auto const& g : gens)
    inv.push_back(mat_inv_unimodular(g));
  return inv;
}

inline BigMatrix evaluate(Word const& w, std::vector<BigMatrix> const& gens) {
  return evaluate(w, gens, inverses_of(gens));
}

} // namespace trapdoor

#endif
