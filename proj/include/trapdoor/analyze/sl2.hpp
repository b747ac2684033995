// Rank-1 toolkit, part one: words for SL(2, Z) elements.
//
//   S = [[0, -1], [1, 0]],  T = [[1, 1], [0, 1]]
//   a = [[1, 2], [0, 1]],   b = [[1, 0], [2, 1]]   (free basis of the Sanov group)

#ifndef TRAPDOOR_ANALYZE_SL2_HPP_
#define TRAPDOOR_ANALYZE_SL2_HPP_

#include <optional>
#include <string>
#include <vector>

#include "trapdoor/construct/words.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

enum class SL2Letter { S, T, T_inv };

struct SL2Word {
  std::vector<SL2Letter> letters;
  int sign = 1; // evaluate(letters) == sign * M

  // "S", "T" and "t" (for T^-1), optionally prefixed by "-".
  std::string str() const {
    std::string s = sign < 0 ? "-" : "";
    for (auto l : letters)
      s += l == SL2Letter::S ? 'S' : (l == SL2Letter::T ? 'T' : 't');
    return s;
  }
};

inline BigMatrix sl2_S() { return BigMatrix{{0, -1}, {1, 0}}; }
inline BigMatrix sl2_T() { return BigMatrix{{1, 1}, {0, 1}}; }

inline BigMatrix evaluate(SL2Word const& w) {
  BigMatrix r = BigMatrix::identity(2);
  BigMatrix const s = sl2_S(), t = sl2_T(), ti = BigMatrix{{1, -1}, {0, 1}};
  for (auto l : w.letters)
    r = r * (l == SL2Letter::S ? s : (l == SL2Letter::T ? t : ti));
  return r;
}

namespace detail {

inline void append_t_power(std::vector<SL2Letter>& out, Int const& k) {
  SL2Letter l = k > 0 ? SL2Letter::T : SL2Letter::T_inv;
  for (Int i = 0; i < abs(k); ++i)
    out.push_back(l);
}

} // namespace detail

// Continued-fraction reduction: Euclid on the first column. Each round
// writes M = T^q S M' with |c'| < |c|; when c reaches 0 the rest is +-T^k.
// The word length is the sum of the partial quotients plus the rounds.
inline SL2Word sl2_word_decompose(BigMatrix const& m) {
  if (m.dim != 2)
    fail("sl2_word_decompose needs a 2x2 matrix");
  if (det(m) != 1)
    fail("sl2_word_decompose needs determinant 1, got ", det(m));
  SL2Word w;
  BigMatrix r = m;
  while (r(1, 0) != 0) {
    Int q = floor_div(r(0, 0), r(1, 0));
    detail::append_t_power(w.letters, q);
    // r <- S^-1 T^-q r
    Int a = r(0, 0) - q * r(1, 0), b = r(0, 1) - q * r(1, 1);
    BigMatrix next(2);
    next(0, 0) = r(1, 0);
    next(0, 1) = r(1, 1);
    next(1, 0) = -a;
    next(1, 1) = -b;
    w.letters.push_back(SL2Letter::S);
    r = std::move(next);
  }
  // r = d * [[1, d * b], [0, 1]] with d = +-1
  Int const d = r(0, 0);
  detail::append_t_power(w.letters, d * r(0, 1));
  w.sign = d == 1 ? 1 : -1;
  return w;
}

inline BigMatrix sanov_a() { return BigMatrix{{1, 2}, {0, 1}}; }
inline BigMatrix sanov_b() { return BigMatrix{{1, 0}, {2, 1}}; }

// For M in Gamma(2), a reduced word w over a (letter 1), b (letter 2) and
// a sign with w(a, b) = sign * M; nullopt when M is not in Gamma(2).
// Ping-pong: left multiplication by a^+-1 or b^+-1 strictly shrinks the
// larger entry of the first column until it is (+-1, 0).
inline std::optional<std::pair<Word, int>> sanov_decompose(BigMatrix const& m) {
  if (m.dim != 2 || det(m) != 1)
    return std::nullopt;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if ((m(i, j) - (i == j ? 1 : 0)) % 2 != 0)
        return std::nullopt;
  BigMatrix r = m;
  Word peeled; // m = peeled * r
  while (r(1, 0) != 0) {
    Int const p = r(0, 0), q = r(1, 0);
    int sgn = (p > 0) == (q > 0) ? 1 : -1;
    if (abs(p) > abs(q)) {
      // r <- a^-sgn r
      for (int j = 0; j < 2; ++j)
        r(0, j) -= 2 * sgn * r(1, j);
      peeled.push_back(sgn * 1);
    } else {
      for (int j = 0; j < 2; ++j)
        r(1, j) -= 2 * sgn * r(0, j);
      peeled.push_back(sgn * 2);
    }
  }
  Int const d = r(0, 0); // +-1
  Int k = d * r(0, 1) / 2;
  for (Int i = 0; i < abs(k); ++i)
    peeled.push_back(k > 0 ? 1 : -1);
  return std::pair{free_reduce(peeled), d == 1 ? 1 : -1};
}

} // namespace trapdoor

#endif
