// Recovering a hidden congruence level from the matrices alone.

#ifndef TRAPDOOR_ANALYZE_LEVEL_HPP_
#define TRAPDOOR_ANALYZE_LEVEL_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "trapdoor/analyze/irreducible.hpp"
#include "trapdoor/construct/words.hpp"
#include "trapdoor/linalg/integer.hpp"
#include "trapdoor/linalg/matrix.hpp"
#include "trapdoor/verify/closure.hpp"
#include "trapdoor/verify/orders.hpp"

namespace trapdoor {

// gcd of the entries of w - I.
inline Int identity_defect_gcd(BigMatrix const& w) {
  Int g = 0;
  for (int i = 0; i < w.dim; ++i)
    for (int j = 0; j < w.dim; ++j)
      g = gcd(g, w(i, j) - (i == j ? 1 : 0));
  return g;
}

struct LevelOptions {
  unsigned word_budget = 4;          // powers g^k for 2 <= k <= word_budget
  std::size_t closure_cap = 100'000; // for the proper-image confirmation
  u64 trial_division_bound = 1u << 20;
};

// Candidate congruence level of <gens>.
//
// If every generator lies in Gamma(q) for some prime q, the gcd of all
// entries of (g - I) exposes it directly and the largest such q is
// returned. Otherwise each probe word w (commutators, double
// commutators, small powers) contributes the primes dividing gcd(w - I);
// a probe lands in Gamma(q) exactly when its image mod q is trivial. Each candidate q is
// confirmed by checking that <gens> mod q is a proper subgroup of
// SL(n, F_q), either because it acts reducibly or by enumeration; the
// largest confirmed prime wins.
inline std::optional<Int> detect_congruence_level(std::vector<BigMatrix> const& gens,
                                                  LevelOptions const& opt = {}) {
  if (gens.empty())
    return std::nullopt;
  int const dim = gens.front().dim;
  Int global = 0;
  for (auto const& g : gens)
    global = gcd(global, identity_defect_gcd(g));
  if (global > 1) {
    auto primes = small_prime_factors(global, opt.trial_division_bound);
    if (!primes.empty())
      return *std::max_element(primes.begin(), primes.end());
  }

  auto const inv = inverses_of(gens);
  std::vector<Int> candidates;
  auto probe = [&](BigMatrix const& w) {
    Int g = identity_defect_gcd(w);
    if (g <= 1) // 0 means w = I, which says nothing
      return;
    for (auto const& q : small_prime_factors(g, opt.trial_division_bound))
      candidates.push_back(q);
  };
  // Commutators and commutators of commutators with a generator: the
  // latter vanish mod q when the image is nilpotent of class two.
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      BigMatrix c = gens[i] * gens[j] * inv[i] * inv[j];
      probe(c);
      BigMatrix const c_inv = inv[j] * inv[i] * gens[j] * gens[i];
      for (std::size_t k = 0; k < gens.size(); ++k)
        probe(c * gens[k] * c_inv * inv[k]);
    }
  for (auto const& g : gens) {
    BigMatrix pw = g;
    for (unsigned k = 2; k <= opt.word_budget; ++k) {
      pw = pw * g;
      probe(pw);
    }
  }
  std::sort(candidates.begin(), candidates.end(), std::greater<>());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (auto const& q : candidates) {
    if (!fits_u64(q))
      continue;
    u64 const p = static_cast<u64>(q);
    if (enveloping_algebra_dimension(gens, p) < static_cast<std::size_t>(dim * dim))
      return q;
    auto order = subgroup_closure(reduce_all(gens, p), opt.closure_cap);
    if (order && Int(*order) < sl_order(dim, p))
      return q;
  }
  return std::nullopt;
}

} // namespace trapdoor

#endif
