// Nielsen moves g_i <- g_i g_j^{+-1} (right) or g_j^{+-1} g_i (left),
// the scrambler built on them, and rewriting of words through a move log.

#ifndef TRAPDOOR_CONSTRUCT_NIELSEN_HPP_
#define TRAPDOOR_CONSTRUCT_NIELSEN_HPP_

#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "trapdoor/construct/random.hpp"
#include "trapdoor/construct/words.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

enum class Side { left, right };

struct ScrambleMove {
  std::size_t target = 0; // i
  std::size_t source = 1; // j, never equal to target
  int exponent = 1;       // +1 or -1
  Side side = Side::right;

  ScrambleMove inverted() const { return {target, source, -exponent, side}; }

  friend bool operator==(ScrambleMove const&, ScrambleMove const&) = default;

  // Lexicographic (i, j, exponent, side), used for deterministic tie-breaks.
  friend bool operator<(ScrambleMove const& a, ScrambleMove const& b) {
    return std::tuple(a.target, a.source, a.exponent, a.side == Side::right)
         < std::tuple(b.target, b.source, b.exponent, b.side == Side::right);
  }
};

using MoveLog = std::vector<ScrambleMove>;

inline void check_move(ScrambleMove const& mv, std::size_t n) {
  if (mv.target >= n || mv.source >= n || mv.target == mv.source)
    fail("invalid Nielsen move (", mv.target, ", ", mv.source, ") on ", n, " generators");
  if (mv.exponent != 1 && mv.exponent != -1)
    fail("Nielsen move exponent must be +-1");
}

// Result of applying `mv` to the generator list (the list itself is not
// modified). `inverses` must hold the inverses of `gens`.
inline BigMatrix moved_generator(std::vector<BigMatrix> const& gens,
                                 std::vector<BigMatrix> const& inverses, ScrambleMove const& mv) {
  BigMatrix const& s = mv.exponent > 0 ? gens[mv.source] : inverses[mv.source];
  return mv.side == Side::right ? gens[mv.target] * s : s * gens[mv.target];
}

inline BigMatrix moved_inverse(std::vector<BigMatrix> const& inverses, std::vector<BigMatrix> const& gens,
                               ScrambleMove const& mv) {
  // (g_i s)^-1 = s^-1 g_i^-1 and (s g_i)^-1 = g_i^-1 s^-1
  BigMatrix const& sinv = mv.exponent > 0 ? inverses[mv.source] : gens[mv.source];
  return mv.side == Side::right ? sinv * inverses[mv.target] : inverses[mv.target] * sinv;
}

inline void apply_move(std::vector<BigMatrix>& gens, ScrambleMove const& mv) {
  check_move(mv, gens.size());
  BigMatrix s = mv.exponent > 0 ? gens[mv.source] : mat_inv_unimodular(gens[mv.source]);
  gens[mv.target] = mv.side == Side::right ? gens[mv.target] * s : s * gens[mv.target];
}

inline std::vector<BigMatrix> replay(std::vector<BigMatrix> gens, MoveLog const& log) {
  for (auto const& mv : log)
    apply_move(gens, mv);
  return gens;
}

inline std::vector<BigMatrix> replay_inverse(std::vector<BigMatrix> gens, MoveLog const& log) {
  for (auto it = log.rbegin(); it != log.rend(); ++it)
    apply_move(gens, it->inverted());
  return gens;
}

// Words expressing each generator of the original list in terms of the
// list obtained by applying `log`.
inline std::vector<Word> original_in_terms_of_moved(std::size_t n, MoveLog const& log) {
  std::vector<Word> w(n);
  for (std::size_t k = 0; k < n; ++k)
    w[k] = {letter(k, 1)};
  // Undo the log symbolically: after undoing moves m_k..m_1 the entries
  // of w evaluate (over the moved list) to the generators before m_1.
  for (auto it = log.rbegin(); it != log.rend(); ++it) {
    ScrambleMove const inv = it->inverted();
    check_move(inv, n);
    Word s = inv.exponent > 0 ? w[inv.source] : inverse(w[inv.source]);
    w[inv.target] = inv.side == Side::right ? concat(w[inv.target], s) : concat(s, w[inv.target]);
  }
  return w;
}

// Rewrites a word over the original generators into a word over the
// generators obtained by applying `log`; both evaluate to the same matrix.
inline Word rewrite_through_log(Word const& word, std::size_t n, MoveLog const& log) {
  auto images = original_in_terms_of_moved(n, log);
  Word out;
  for (int l : word) {
    std::size_t g = letter_gen(l);
    if (g >= n)
      fail("word letter out of range while rewriting");
    Word const& piece = images[g];
    if (l > 0)
      out.insert(out.end(), piece.begin(), piece.end());
    else {
      Word inv = inverse(piece);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return free_reduce(out);
}

struct ScrambleResult {
  std::vector<BigMatrix> generators;
  MoveLog log;
  std::size_t rejected = 0;
};

inline std::size_t max_entry_digits(std::vector<BigMatrix> const& gens) {
  std::size_t d = 0;
  for (auto const& g : gens)
    d = std::max(d, decimal_digits(g.max_abs_entry()));
  return d;
}

inline constexpr std::size_t default_scramble_retry_cap = 2000;

// Applies `depth` uniformly sampled Nielsen moves. A move whose result
// has an entry with more than `entry_budget` decimal digits is rejected
// and resampled; `retry_cap` consecutive rejections is an error.
inline ScrambleResult nielsen_scramble(std::vector<BigMatrix> gens, std::size_t depth, Rng& rng,
                                       std::size_t entry_budget,
                                       std::size_t retry_cap = default_scramble_retry_cap) {
  if (gens.size() < 2 && depth > 0)
    fail("nielsen_scramble needs at least two generators");
  ScrambleResult out;
  auto inverses = inverses_of(gens);
  for (std::size_t step = 0; step < depth; ++step) {
    std::size_t attempts = 0;
    for (;;) {
      ScrambleMove mv;
      mv.target = rng.index(gens.size());
      mv.source = rng.index(gens.size() - 1);
      if (mv.source >= mv.target)
        ++mv.source;
      mv.exponent = rng.sign();
      mv.side = rng.coin() ? Side::right : Side::left;
      BigMatrix next = moved_generator(gens, inverses, mv);
      if (decimal_digits(next.max_abs_entry()) <= entry_budget) {
        inverses[mv.target] = moved_inverse(inverses, gens, mv);
        gens[mv.target] = std::move(next);
        out.log.push_back(mv);
        break;
      }
      ++out.rejected;
      if (++attempts >= retry_cap)
        fail("nielsen_scramble: entry budget of ", entry_budget, " digits unreachable at step ", step,
             " after ", retry_cap, " attempts");
    }
  }
  out.generators = std::move(gens);
  return out;
}

// Named (depth, entry budget) presets.
struct ScramblePreset {
  std::string name;
  std::size_t depth;
  std::size_t entry_budget;
};

inline ScramblePreset scramble_preset(std::string const& name) {
  if (name == "none")
    return {name, 0, 0};
  if (name == "desk")
    return {name, 12, 10};
  if (name == "paper-C01")
    return {name, 60, 31};
  if (name == "paper-X10")
    return {name, 70, 34};
  fail("unknown scramble preset '", name, "' (expected none, desk, paper-C01, paper-X10)");
}

} // namespace trapdoor

#endif
