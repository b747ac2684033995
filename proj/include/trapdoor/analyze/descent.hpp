// Descent on the Nielsen graph: a beam search over generating sets that
// keeps the candidates with the smallest total entry size.

#ifndef TRAPDOOR_ANALYZE_DESCENT_HPP_
#define TRAPDOOR_ANALYZE_DESCENT_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "trapdoor/construct/nielsen.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

enum class DescentStop { local_minimum, plateau_exhausted, max_steps };

inline std::string descent_stop_name(DescentStop s) {
  switch (s) {
    case DescentStop::local_minimum: return "local_minimum";
    case DescentStop::plateau_exhausted: return "plateau_exhausted";
    case DescentStop::max_steps: return "max_steps";
  }
  return "?";
}

struct DescentResult {
  std::vector<BigMatrix> generators;
  MoveLog trace;                   // replaying this on the input gives `generators`
  std::vector<std::size_t> scores; // descent_score after each traced move, scores[0] = initial
  Int start_cost = 0, end_cost = 0;
  DescentStop stop = DescentStop::local_minimum;
};

// Sum over generators of the bit length of the largest absolute entry.
inline std::size_t descent_score(std::vector<BigMatrix> const& gens) {
  std::size_t s = 0;
  for (auto const& g : gens)
    s += bit_length(g.max_abs_entry());
  return s;
}

inline Int l1_norm(BigMatrix const& m) {
  Int s = 0;
  for (int k = 0; k < m.dim * m.dim; ++k)
    s += abs(m.e[static_cast<std::size_t>(k)]);
  return s;
}

// Sum of the L1 norms of the generators; the quantity the search minimizes.
inline Int descent_cost(std::vector<BigMatrix> const& gens) {
  Int s = 0;
  for (auto const& g : gens)
    s += l1_norm(g);
  return s;
}

struct DescentOptions {
  std::size_t max_rounds = 300;
  std::size_t beam_width = 16;
  std::size_t patience = 8; // rounds without a new best before stopping
};

namespace detail {

using i128 = __int128;
using SmallMatrix = std::array<i128, 9>;

// Entries below 2^60 keep every product of two matrices inside i128.
inline bool fits_small(BigMatrix const& m) { return m.max_abs_entry() < (Int(1) << 60); }

inline SmallMatrix to_small(BigMatrix const& m) {
  SmallMatrix s{};
  for (std::size_t k = 0; k < static_cast<std::size_t>(m.dim * m.dim); ++k)
    s[k] = static_cast<i128>(static_cast<long long>(m.e[k]));
  return s;
}

inline Int to_int(i128 v) {
  bool const neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  Int r = Int(static_cast<unsigned long long>(u >> 64)) << 64;
  r += static_cast<unsigned long long>(u);
  return neg ? -r : r;
}

inline i128 product_l1(SmallMatrix const& a, SmallMatrix const& b, int n) {
  i128 s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      i128 x = 0;
      for (int k = 0; k < n; ++k)
        x += a[static_cast<std::size_t>(i * n + k)] * b[static_cast<std::size_t>(k * n + j)];
      s += x < 0 ? -x : x;
    }
  return s;
}

struct DescentState {
  std::vector<BigMatrix> gens, inverses;
  std::vector<Int> norms;
  Int cost = 0;
  bool small = false;
  std::vector<SmallMatrix> small_gens, small_inverses;
  std::vector<i128> small_norms;
  i128 small_cost = 0;
  MoveLog trace;

  explicit DescentState(std::vector<BigMatrix> g) : gens(std::move(g)) {
    inverses = inverses_of(gens);
    for (auto const& m : gens) {
      norms.push_back(l1_norm(m));
      cost += norms.back();
    }
    refresh_small();
  }

  void refresh_small() {
    small = std::all_of(gens.begin(), gens.end(), fits_small)
         && std::all_of(inverses.begin(), inverses.end(), fits_small);
    small_gens.clear();
    small_inverses.clear();
    small_norms.clear();
    small_cost = 0;
    if (small)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        small_gens.push_back(to_small(gens[k]));
        small_inverses.push_back(to_small(inverses[k]));
        i128 n = 0;
        for (i128 x : small_gens.back())
          n += x < 0 ? -x : x;
        small_norms.push_back(n);
        small_cost += n;
      }
  }

  // Requires `small`; then the cost itself fits in i128.
  i128 small_cost_after(ScrambleMove const& mv) const {
    SmallMatrix const& s = mv.exponent > 0 ? small_gens[mv.source] : small_inverses[mv.source];
    SmallMatrix const& t = small_gens[mv.target];
    int const n = gens.front().dim;
    i128 const moved = mv.side == Side::right ? product_l1(t, s, n) : product_l1(s, t, n);
    return small_cost - small_norms[mv.target] + moved;
  }

  Int cost_after(ScrambleMove const& mv) const {
    if (small)
      return to_int(small_cost_after(mv));
    return cost - norms[mv.target] + l1_norm(moved_generator(gens, inverses, mv));
  }

  void apply(ScrambleMove const& mv) {
    BigMatrix m = moved_generator(gens, inverses, mv);
    inverses[mv.target] = moved_inverse(inverses, gens, mv);
    gens[mv.target] = std::move(m);
    cost -= norms[mv.target];
    norms[mv.target] = l1_norm(gens[mv.target]);
    cost += norms[mv.target];
    trace.push_back(mv);
    refresh_small();
  }

  std::string key() const {
    std::string k;
    for (auto const& g : gens)
      for (int c = 0; c < g.dim * g.dim; ++c)
        k += g.e[static_cast<std::size_t>(c)].str() + ',';
    return k;
  }
};

inline std::vector<ScrambleMove> all_moves(std::size_t n) {
  std::vector<ScrambleMove> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        for (int e : {-1, 1})
          for (Side side : {Side::left, Side::right})
            out.push_back({i, j, e, side});
  return out;
}

} // namespace detail

// Each round expands every state in the beam by every Nielsen move and
// keeps the `beam_width` cheapest unseen results (ties broken by state,
// then move order). Stops after `patience` rounds without a new best, when
// nothing unseen is reachable, or after `max_rounds`; returns the best
// generating set seen. Deterministic.
inline DescentResult nielsen_descent(std::vector<BigMatrix> gens, DescentOptions const& opt) {
  if (gens.size() < 2)
    fail("nielsen_descent needs at least two generators");
  if (opt.beam_width == 0)
    fail("nielsen_descent needs a beam width >= 1");
  auto const moves = detail::all_moves(gens.size());
  std::vector<detail::DescentState> beam{detail::DescentState(gens)};
  std::unordered_set<std::string> seen{beam.front().key()};
  detail::DescentState best = beam.front();

  DescentResult out;
  out.start_cost = best.cost;
  out.stop = DescentStop::max_steps;
  std::size_t stale = 0;
  for (std::size_t round = 0; round < opt.max_rounds; ++round) {
    std::vector<detail::DescentState> next;
    // Cheapest candidates first; only a prefix is sorted unless duplicates
    // of seen states exhaust it.
    auto take = [&](auto& candidates) {
      std::size_t sorted = std::min(candidates.size(), 8 * opt.beam_width);
      std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(sorted),
                        candidates.end());
      for (std::size_t k = 0; k < candidates.size() && next.size() < opt.beam_width; ++k) {
        if (k == sorted) {
          std::sort(candidates.begin() + static_cast<std::ptrdiff_t>(k), candidates.end());
          sorted = candidates.size();
        }
        auto const& [c, st, m] = candidates[k];
        detail::DescentState child = beam[st];
        child.apply(moves[m]);
        if (seen.insert(child.key()).second)
          next.push_back(std::move(child));
      }
    };
    if (std::all_of(beam.begin(), beam.end(), [](auto const& st) { return st.small; })) {
      std::vector<std::tuple<detail::i128, std::size_t, std::size_t>> candidates;
      for (std::size_t st = 0; st < beam.size(); ++st)
        for (std::size_t m = 0; m < moves.size(); ++m)
          candidates.emplace_back(beam[st].small_cost_after(moves[m]), st, m);
      take(candidates);
    } else {
      std::vector<std::tuple<Int, std::size_t, std::size_t>> candidates;
      for (std::size_t st = 0; st < beam.size(); ++st)
        for (std::size_t m = 0; m < moves.size(); ++m)
          candidates.emplace_back(beam[st].cost_after(moves[m]), st, m);
      take(candidates);
    }
    if (next.empty()) {
      out.stop = DescentStop::local_minimum;
      break;
    }
    beam = std::move(next);
    if (beam.front().cost < best.cost) {
      best = beam.front();
      stale = 0;
    } else if (++stale >= opt.patience) {
      out.stop = DescentStop::plateau_exhausted;
      break;
    }
  }
  out.end_cost = best.cost;
  out.trace = best.trace;
  out.scores.push_back(descent_score(gens));
  for (auto const& mv : out.trace) {
    apply_move(gens, mv);
    out.scores.push_back(descent_score(gens));
  }
  out.generators = std::move(best.gens);
  return out;
}

inline DescentResult nielsen_descent(std::vector<BigMatrix> gens, std::size_t max_rounds) {
  DescentOptions opt;
  opt.max_rounds = max_rounds;
  return nielsen_descent(std::move(gens), opt);
}

} // namespace trapdoor

#endif
