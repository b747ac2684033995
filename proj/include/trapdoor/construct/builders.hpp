// Instance builders for families I-V. Every builder is a pure function of
// its parameters and seed.

#ifndef TRAPDOOR_CONSTRUCT_BUILDERS_HPP_
#define TRAPDOOR_CONSTRUCT_BUILDERS_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "trapdoor/analyze/forms.hpp"
#include "trapdoor/analyze/irreducible.hpp"
#include "trapdoor/construct/freeness.hpp"
#include "trapdoor/construct/nielsen.hpp"
#include "trapdoor/construct/presets.hpp"
#include "trapdoor/construct/random.hpp"
#include "trapdoor/construct/types.hpp"
#include "trapdoor/construct/words.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"
#include "trapdoor/linalg/modular.hpp"
#include "trapdoor/verify/closure.hpp"
#include "trapdoor/verify/orders.hpp"

namespace trapdoor {

inline constexpr char grammar_yes_no[] = "yes_no_tuple";
inline constexpr char grammar_index[] = "integer | infinite_or_unknown";

// Random freely reduced word of the given length over `alphabet`.
inline Word random_reduced_word(std::size_t n_gens, std::size_t length, Rng& rng) {
  Word w;
  while (w.size() < length) {
    int l = letter(rng.index(n_gens), rng.sign());
    if (!w.empty() && w.back() == -l)
      continue;
    w.push_back(l);
  }
  return w;
}

// Product of `length` random shears of level N (an element of Gamma(N)).
inline BigMatrix random_gamma_element(u64 N, std::size_t length, Rng& rng, int dim = 3) {
  auto shears = gamma_generators(N, dim);
  return evaluate(random_reduced_word(shears.size(), length, rng), shears);
}

// Random element of SL(dim, Z/p) as a product of elementary matrices.
inline ModMatrix random_sl_mod(u64 p, Rng& rng, int dim = 3, std::size_t factors = 12) {
  ModMatrix r = ModMatrix::identity(dim, p);
  for (std::size_t k = 0; k < factors; ++k) {
    int i = static_cast<int>(rng.index(static_cast<std::size_t>(dim)));
    int j = static_cast<int>(rng.index(static_cast<std::size_t>(dim - 1)));
    if (j >= i)
      ++j;
    ModMatrix e = ModMatrix::identity(dim, p);
    e(i, j) = rng.uniform_u64(1, p - 1);
    r = r * e;
  }
  return r;
}

namespace detail {

inline void require_prime(u64 p, char const* what) {
  if (!is_prime(p))
    fail(what, " = ", p, " is not prime");
}

// Prime list with `bad` inserted at a random position among `decoys`.
inline std::vector<u64> mix_primes(u64 bad, std::vector<u64> const& decoys, Rng& rng) {
  for (u64 d : decoys) {
    require_prime(d, "decoy prime");
    if (d == bad)
      fail("decoy list contains the planted prime ", bad);
  }
  std::vector<u64> primes = decoys;
  primes.insert(primes.begin() + static_cast<std::ptrdiff_t>(rng.index(decoys.size() + 1)), bad);
  return primes;
}

inline ScrambleResult scramble_with(std::vector<BigMatrix> const& base, ScramblePreset const& preset, Rng& rng) {
  if (preset.depth == 0)
    return {base, {}, 0};
  return nielsen_scramble(base, preset.depth, rng, preset.entry_budget);
}

// |K| for a K that must be a proper subgroup of SL(3, Z/N).
inline Int proper_k_order(std::vector<ModMatrix> const& k_gens, u64 N) {
  auto order = k_group_order(k_gens);
  if (!order)
    fail("|K| could not be determined: closure exceeds the element cap");
  if (*order == sl3_order(N))
    fail("K is all of SL(3, Z/", N, "); N would not be a bad prime");
  if (sl3_order(N) % *order != 0)
    fail("|K| = ", *order, " does not divide |SL(3, Z/", N, ")|");
  return *order;
}

} // namespace detail

struct Family1Options {
  std::string id;
  std::size_t gamma_length = 2;   // shears per Gamma(p) factor
  std::size_t scramble_depth = 4;
  std::size_t entry_budget = 80;
  std::size_t min_word = 2, max_word = 5;
};

// Membership: generators lift(s_k) * gamma_k with s_k generating the
// planted group mod p and gamma_k in Gamma(p). YES candidates are recorded
// words; NO candidates reduce outside the planted group mod p.
inline Built build_family1(u64 p, KSpec const& planted, std::size_t n_candidates, std::uint64_t seed,
                           Family1Options const& opt = {}) {
  detail::require_prime(p, "p");
  if (planted.preset == "full")
    fail("planted group must be a small explicit subgroup, not all of SL(3, F_p)");
  Rng rng(seed);
  auto planted_gens = k_generators(planted, p);
  auto lifts = k_lifts(planted, p);
  auto group = enumerate_subgroup(planted_gens, 3, p, 1'000'000);
  if (group.overflow())
    fail("planted group is too large to enumerate mod ", p);

  TrapdoorSecret s;
  s.family = Family::I;
  s.id = opt.id.empty() ? "I-p" + std::to_string(p) + "-" + planted.preset + "-s" + std::to_string(seed) : opt.id;
  s.planted_prime = p;
  s.k_preset = planted.preset;
  s.k_gens = planted_gens;
  s.k_order = Int(group.order());
  s.seed = seed;
  s.prng = std::string(Rng::algorithm);
  s.candidate_count = n_candidates;

  for (auto const& l : lifts)
    s.base_generators.push_back(l * random_gamma_element(p, opt.gamma_length, rng));
  auto scrambled = nielsen_scramble(s.base_generators, opt.scramble_depth, rng, opt.entry_budget);
  s.scramble_log = scrambled.log;

  Instance inst;
  inst.id = s.id;
  inst.family = Family::I;
  inst.question = QuestionKind::membership_list;
  inst.generators = scrambled.generators;
  inst.answer_grammar = grammar_yes_no;

  std::vector<bool> yes(n_candidates, false);
  for (std::size_t k = 0; k < (n_candidates + 1) / 2; ++k)
    yes[k] = true;
  std::shuffle(yes.begin(), yes.end(), rng.engine());

  auto const base_inv = inverses_of(s.base_generators);
  std::size_t const n_gens = s.base_generators.size();
  for (std::size_t k = 0; k < n_candidates; ++k) {
    Word w = random_reduced_word(n_gens, static_cast<std::size_t>(rng.uniform(
                                             static_cast<std::int64_t>(opt.min_word),
                                             static_cast<std::int64_t>(opt.max_word))),
                                 rng);
    BigMatrix t = evaluate(w, s.base_generators, base_inv);
    if (yes[k]) {
      s.word_certificates[candidate_id(k)] = w;
    } else {
      // Multiply by an elementary matrix; its image leaves the planted group.
      for (;;) {
        int i = static_cast<int>(rng.index(3));
        int j = static_cast<int>(rng.index(2));
        if (j >= i)
          ++j;
        BigMatrix u = t * BigMatrix::elementary(3, i, j, rng.sign());
        if (!group.contains(reduce_mod(u, p))) {
          t = u;
          break;
        }
      }
    }
    inst.candidates.push_back(std::move(t));
  }
  return {std::move(inst), std::move(s)};
}

struct Family2Options {
  std::string id;
  std::size_t obfuscation_length = 3; // Gamma(p*) shears multiplied onto each generator
  std::size_t scramble_depth = 0;
  std::size_t entry_budget = 80;
  std::size_t decoy_retry_cap = 50;
};

namespace detail {

// Decoy primes are meant to be YES. A decoy is rejected if the pair
// preserves a form there, acts reducibly, or (when the group is small
// enough to enumerate) has a proper image.
inline bool decoy_obstructed(std::vector<BigMatrix> const& gens, u64 q,
                             Int const& enumeration_limit = 1'000'000) {
  if (detect_invariant_form(gens, q).nullspace_dim > 0)
    return true;
  if (enveloping_algebra_dimension(gens, q) < 9)
    return true;
  if (sl3_order(q) <= enumeration_limit) {
    auto order = subgroup_closure(reduce_all(gens, q), 1'000'001);
    return !order || Int(*order) != sl3_order(q);
  }
  return false;
}

} // namespace detail

// List-prime: a pair preserving a planted symmetric form Q' mod p*. The
// octahedral group preserves the identity form; conjugating by a random
// C in SL(3, F_p*) moves it into SO(Q') with Q' = C^T C.
inline Built build_family2(u64 p_star, std::vector<u64> const& decoys, std::uint64_t seed,
                           Family2Options const& opt = {}) {
  detail::require_prime(p_star, "p_star");
  if (p_star == 2)
    fail("p_star must be an odd prime");
  Rng rng(seed);
  TrapdoorSecret s;
  s.family = Family::II;
  s.id = opt.id.empty() ? "II-p" + std::to_string(p_star) + "-s" + std::to_string(seed) : opt.id;
  s.seed = seed;
  s.prng = std::string(Rng::algorithm);
  s.planted_prime = p_star;
  s.k_preset = "octahedral_s4";
  s.primes = detail::mix_primes(p_star, decoys, rng);

  ModMatrix c = random_sl_mod(p_star, rng);
  ModMatrix c_inv = inverse_mod(c);
  ModMatrix q = transposed(c) * c;
  if (det_mod(q) == 0)
    fail("planted form is degenerate");
  s.planted_form = q;
  std::vector<BigMatrix> lifts;
  for (auto const& g : octahedral_s4_generators()) {
    ModMatrix conj = c_inv * reduce_mod(g, p_star) * c;
    s.k_gens.push_back(conj);
    lifts.push_back(lift_to_sl(conj));
  }
  // Resample the Gamma(p*) factors until no decoy shows an obstruction.
  bool screened = false;
  for (std::size_t attempt = 0; attempt < opt.decoy_retry_cap && !screened; ++attempt) {
    s.base_generators.clear();
    for (auto const& l : lifts)
      s.base_generators.push_back(l * random_gamma_element(p_star, opt.obfuscation_length, rng));
    screened = std::none_of(decoys.begin(), decoys.end(),
                            [&](u64 q) { return detail::decoy_obstructed(s.base_generators, q); });
  }
  if (!screened)
    fail("family II: a decoy prime stayed obstructed after ", opt.decoy_retry_cap, " attempts");
  s.k_order = Int(24);
  auto scrambled = nielsen_scramble(s.base_generators, opt.scramble_depth, rng, opt.entry_budget);
  s.scramble_log = scrambled.log;

  Instance inst;
  inst.id = s.id;
  inst.family = Family::II;
  inst.question = QuestionKind::prime_list_yesno;
  inst.generators = scrambled.generators;
  inst.primes = s.primes;
  inst.answer_grammar = grammar_yes_no;
  return {std::move(inst), std::move(s)};
}

// Shared by family III and IV-v2: scrambled Gamma(N) shears plus lifts of K.
inline TrapdoorSecret congruence_secret(Family family, u64 N, KSpec const& k, std::uint64_t seed,
                                        std::string const& preset_name, std::string const& id) {
  detail::require_prime(N, "N");
  if (k.preset == "full")
    fail("K = SL(3, Z/N) is rejected: the extension would not be proper");
  TrapdoorSecret s;
  s.family = family;
  s.id = id;
  s.N = N;
  s.k_preset = k.preset;
  s.k_gens = k_generators(k, N);
  s.k_order = detail::proper_k_order(s.k_gens, N);
  s.seed = seed;
  s.prng = std::string(Rng::algorithm);
  s.scramble_preset = preset_name;
  s.base_generators = gamma_generators(N);
  for (auto const& l : k_lifts(k, N))
    s.base_generators.push_back(l);
  return s;
}

inline Built build_family3(u64 N, KSpec const& k, std::vector<u64> const& decoys, std::uint64_t seed,
                           std::string const& preset_name = "paper-C01", std::string const& id = {}) {
  Rng rng(seed);
  auto s = congruence_secret(Family::III, N, k, seed, preset_name,
                             id.empty() ? "III-N" + std::to_string(N) + "-" + k.preset + "-s" + std::to_string(seed)
                                        : id);
  s.primes = detail::mix_primes(N, decoys, rng);
  auto scrambled = detail::scramble_with(s.base_generators, scramble_preset(preset_name), rng);
  s.scramble_log = scrambled.log;

  Instance inst;
  inst.id = s.id;
  inst.family = Family::III;
  inst.question = QuestionKind::prime_list_yesno;
  inst.generators = scrambled.generators;
  inst.primes = s.primes;
  inst.answer_grammar = grammar_yes_no;
  return {std::move(inst), std::move(s)};
}

enum class Variant { v1, v2, v3 };

struct Family4Options {
  std::string id;
  std::string preset = "paper-X10";
  // v3 only: shear word length, scramble depth/budget and resampling cap.
  std::size_t v3_word_length = 6;
  std::size_t v3_scramble_depth = 3;
  std::size_t v3_entry_budget = 120;
  std::size_t v3_retry_cap = 20;
  std::size_t freeness_depth = 10;
  // v1 only: primes at which surjectivity of the pair is confirmed.
  std::vector<u64> v1_check_primes{2, 3, 5};
};

inline Built build_family4(Variant variant, u64 N, KSpec const& k, std::uint64_t seed,
                           Family4Options const& opt = {}) {
  Rng rng(seed);
  TrapdoorSecret s;
  std::vector<BigMatrix> published;
  if (variant == Variant::v1) {
    s.family = Family::IV_v1;
    s.id = opt.id.empty() ? "IV-v1-s" + std::to_string(seed) : opt.id;
    s.seed = seed;
    s.prng = std::string(Rng::algorithm);
    s.scramble_preset = opt.preset;
    s.base_generators = sl3z_generating_pair();
    for (u64 p : opt.v1_check_primes) {
      auto order = subgroup_closure(reduce_all(s.base_generators, p));
      if (!order || Int(*order) != sl3_order(p))
        fail("v1 generating pair is not surjective mod ", p);
    }
    auto scrambled = detail::scramble_with(s.base_generators, scramble_preset(opt.preset), rng);
    s.scramble_log = scrambled.log;
    published = scrambled.generators;
  } else if (variant == Variant::v2) {
    s = congruence_secret(Family::IV_v2, N, k, seed, opt.preset,
                          opt.id.empty() ? "IV-v2-N" + std::to_string(N) + "-" + k.preset + "-s" + std::to_string(seed)
                                         : opt.id);
    auto scrambled = detail::scramble_with(s.base_generators, scramble_preset(opt.preset), rng);
    s.scramble_log = scrambled.log;
    published = scrambled.generators;
  } else {
    detail::require_prime(N, "N");
    s.family = Family::IV_v3;
    s.id = opt.id.empty() ? "IV-v3-N" + std::to_string(N) + "-s" + std::to_string(seed) : opt.id;
    s.N = N;
    s.seed = seed;
    s.prng = std::string(Rng::algorithm);
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < opt.v3_retry_cap && !accepted; ++attempt) {
      BigMatrix g1 = random_gamma_element(N, opt.v3_word_length, rng);
      BigMatrix g2 = random_gamma_element(N, opt.v3_word_length, rng);
      if (freeness_bfs(g1, g2, opt.freeness_depth).is_free()) {
        s.base_generators = {g1, g2};
        accepted = true;
      }
    }
    if (!accepted)
      fail("v3: no pair passed the freeness check after ", opt.v3_retry_cap, " attempts");
    auto scrambled = nielsen_scramble(s.base_generators, opt.v3_scramble_depth, rng, opt.v3_entry_budget);
    s.scramble_log = scrambled.log;
    published = scrambled.generators;
  }
  Instance inst;
  inst.id = s.id;
  inst.family = s.family;
  inst.question = QuestionKind::exact_index_or_unknown;
  inst.generators = std::move(published);
  inst.answer_grammar = grammar_index;
  return {std::move(inst), std::move(s)};
}

struct SL2CatalogEntry {
  std::string id;
  u64 level;
};

// S2_02 is the Sanov pair (level 2); the others are the analogous pairs
// of level 3, 5, 7, 11.
inline std::vector<SL2CatalogEntry> const& sl2_catalog() {
  static std::vector<SL2CatalogEntry> const catalog{
      {"S2_01", 3}, {"S2_02", 2}, {"S2_03", 5}, {"S2_04", 7}, {"S2_05", 11}};
  return catalog;
}

// Family V: the five SL(2, Z) baseline instances, optionally scrambled.
inline std::vector<Built> build_family5(std::size_t scramble_depth = 0, std::uint64_t seed = 0) {
  std::vector<Built> out;
  Rng rng(seed);
  for (auto const& entry : sl2_catalog()) {
    TrapdoorSecret s;
    s.family = Family::V;
    s.id = entry.id;
    s.catalog_id = entry.id;
    s.N = entry.level;
    s.seed = seed;
    s.prng = std::string(Rng::algorithm);
    s.base_generators = {shear(entry.level, 1, 2, 2), shear(entry.level, 2, 1, 2)};
    auto scrambled = nielsen_scramble(s.base_generators, scramble_depth, rng, 200);
    s.scramble_log = scrambled.log;
    Instance inst;
    inst.id = s.id;
    inst.family = Family::V;
    inst.question = QuestionKind::exact_index_or_unknown;
    inst.dim = 2;
    inst.generators = scrambled.generators;
    inst.answer_grammar = grammar_index;
    out.push_back({std::move(inst), std::move(s)});
  }
  return out;
}

} // namespace trapdoor

#endif
