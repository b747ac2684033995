// Verifier side: closed-form ground truth from secrets and the
// construction-time sanity checks.

#ifndef TRAPDOOR_VERIFY_VERIFY_HPP_
#define TRAPDOOR_VERIFY_VERIFY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "trapdoor/construct/builders.hpp"
#include "trapdoor/construct/freeness.hpp"
#include "trapdoor/construct/nielsen.hpp"
#include "trapdoor/construct/types.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"
#include "trapdoor/verify/closure.hpp"
#include "trapdoor/verify/orders.hpp"

namespace trapdoor {

inline IndexValue sl2_index_catalog(std::string const& id) {
  for (auto const& entry : sl2_catalog())
    if (entry.id == id)
      // The level-2 pair is free and misses -I, so it has index 2 in
      // Gamma(2), which has index 6.
      return entry.level == 2 ? IndexValue::finite(12) : IndexValue::infinity();
  fail("unknown SL(2, Z) catalog id '", id, "'");
}

// Reads only the secret. |K| must have been memoized at build time.
inline GroundTruth ground_truth(TrapdoorSecret const& s) {
  GroundTruth t;
  t.id = s.id;
  t.family = s.family;
  switch (s.family) {
    case Family::I:
      for (std::size_t k = 0; k < s.candidate_count; ++k)
        t.membership.push_back(s.word_certificates.count(candidate_id(k)) > 0);
      break;
    case Family::II:
      if (!s.planted_prime)
        fail("family II secret without a planted prime");
      for (u64 p : s.primes)
        t.surjective.push_back(p != *s.planted_prime);
      break;
    case Family::III:
      for (u64 p : s.primes)
        t.surjective.push_back(p != s.N);
      break;
    case Family::IV_v1:
      t.index = IndexValue::finite(1);
      break;
    case Family::IV_v2: {
      if (!s.k_order || *s.k_order <= 0)
        fail("family IV-v2 secret has no memoized |K|");
      Int total = sl3_order(s.N);
      if (total % *s.k_order != 0)
        fail("|K| = ", *s.k_order, " does not divide |SL(3, Z/", s.N, ")|: corrupted secret");
      t.index = IndexValue::finite(total / *s.k_order);
      break;
    }
    case Family::IV_v3:
      t.index = IndexValue::infinity();
      t.accepted_abstain = true;
      break;
    case Family::V:
      t.index = sl2_index_catalog(s.catalog_id);
      break;
  }
  return t;
}

struct SanityReport {
  bool mod_image_ok = false;
  std::optional<bool> freeness_ok;
  bool det_ok = false;
  bool replay_ok = true;
  std::optional<bool> certificates_ok;
  std::vector<std::string> notes;

  bool ok() const {
    return mod_image_ok && det_ok && replay_ok && freeness_ok.value_or(true) && certificates_ok.value_or(true);
  }
};

inline bool all_det_one(std::vector<BigMatrix> const& ms) {
  for (auto const& m : ms)
    if (det(m) != 1)
      return false;
  return true;
}

// Checks <gens> mod N == <K_gens>: by the Frattini criterion when K is the
// upper unipotent group, otherwise by enumerating both groups.
inline SanityReport sanity_mod_image(std::vector<BigMatrix> const& gens, u64 N,
                                     std::vector<ModMatrix> const& k_gens,
                                     std::size_t cap = default_closure_cap) {
  SanityReport r;
  r.det_ok = all_det_one(gens);
  if (!r.det_ok)
    r.notes.push_back("a generator has determinant != 1");
  if (gens.empty()) {
    r.notes.push_back("no generators");
    return r;
  }
  auto reduced = reduce_all(gens, N);
  if (generates_upper_unipotent(k_gens)) {
    r.mod_image_ok = generates_upper_unipotent(reduced);
    r.notes.push_back(r.mod_image_ok ? "image mod N equals U (Frattini criterion)"
                                     : "image mod N is not U (Frattini criterion)");
    return r;
  }
  int const dim = gens.front().dim;
  auto k = k_gens.empty() ? enumerate_subgroup({}, dim, N, cap) : enumerate_subgroup(k_gens, dim, N, cap);
  if (k.overflow()) {
    r.notes.push_back("not verified: |K| exceeds the closure cap and no shortcut applies");
    return r;
  }
  for (auto const& g : reduced)
    if (!k.contains(g)) {
      r.notes.push_back("a generator reduces outside K");
      return r;
    }
  auto h = enumerate_subgroup(reduced, dim, N, k.order() + 1);
  r.mod_image_ok = !h.overflow() && h.order() == k.order();
  r.notes.push_back(r.mod_image_ok ? "image mod N equals K by enumeration (|K| = " + std::to_string(k.order()) + ")"
                                   : "image mod N is a proper subgroup of K");
  return r;
}

inline constexpr std::size_t verification_freeness_depth = 10;

// Re-runs every construction-time check on an (instance, secret) pair.
inline SanityReport verify_instance(Instance const& inst, TrapdoorSecret const& s) {
  SanityReport r;
  if (inst.id != s.id || inst.family != s.family)
    fail("instance '", inst.id, "' and secret '", s.id, "' do not belong together");
  r.det_ok = all_det_one(inst.generators) && all_det_one(inst.candidates);
  if (!r.det_ok)
    r.notes.push_back("determinant check failed");

  std::vector<BigMatrix> replayed;
  try {
    replayed = replay(s.base_generators, s.scramble_log);
  } catch (Error const& e) {
    r.notes.push_back(std::string("scramble log does not replay: ") + e.what());
  }
  r.replay_ok = replayed == inst.generators;
  if (!r.replay_ok)
    r.notes.push_back("replay mismatch: published generators differ from the replayed scramble log");

  switch (s.family) {
    case Family::I: {
      u64 const p = s.planted_prime.value_or(0);
      auto planted = enumerate_subgroup(s.k_gens, 3, p, 1'000'000);
      bool ok = !planted.overflow() && inst.candidates.size() == s.candidate_count;
      for (auto const& g : inst.generators)
        ok = ok && planted.contains(reduce_mod(g, p));
      r.mod_image_ok = ok;
      bool certs = ok;
      for (std::size_t k = 0; certs && k < inst.candidates.size(); ++k) {
        auto it = s.word_certificates.find(candidate_id(k));
        if (it != s.word_certificates.end()) {
          certs = evaluate(it->second, s.base_generators) == inst.candidates[k]
               && evaluate(rewrite_through_log(it->second, s.base_generators.size(), s.scramble_log),
                           inst.generators) == inst.candidates[k];
        } else {
          certs = !planted.contains(reduce_mod(inst.candidates[k], p));
        }
      }
      r.certificates_ok = certs;
      if (!certs)
        r.notes.push_back("a candidate certificate failed to re-evaluate");
      break;
    }
    case Family::II: {
      u64 const p = s.planted_prime.value_or(0);
      bool ok = s.planted_form.has_value() && inst.primes == s.primes;
      for (auto const& g : inst.generators) {
        if (!ok)
          break;
        ModMatrix a = reduce_mod(g, p);
        ok = transposed(a) * *s.planted_form * a == *s.planted_form;
      }
      r.mod_image_ok = ok;
      r.notes.push_back(ok ? "planted form preserved mod p*" : "planted form check failed");
      bool decoys_ok = true;
      for (u64 q : s.primes)
        if (q != p && detail::decoy_obstructed(inst.generators, q)) {
          decoys_ok = false;
          r.notes.push_back("decoy prime " + std::to_string(q) + " shows an obstruction");
        }
      r.certificates_ok = ok && decoys_ok;
      break;
    }
    case Family::III:
    case Family::IV_v2: {
      auto sanity = sanity_mod_image(inst.generators, s.N, s.k_gens);
      r.mod_image_ok = sanity.mod_image_ok && (s.family != Family::III || inst.primes == s.primes);
      r.notes.insert(r.notes.end(), sanity.notes.begin(), sanity.notes.end());
      break;
    }
    case Family::IV_v1: {
      bool ok = true;
      for (u64 p : {2ull, 3ull}) {
        auto order = subgroup_closure(reduce_all(inst.generators, p));
        ok = ok && order && Int(*order) == sl3_order(p);
      }
      r.mod_image_ok = ok;
      r.notes.push_back(ok ? "surjective mod 2 and mod 3" : "not surjective at a check prime");
      break;
    }
    case Family::IV_v3: {
      bool in_gamma = true;
      for (auto const& g : inst.generators)
        in_gamma = in_gamma && reduce_mod(g, s.N).is_identity();
      r.mod_image_ok = in_gamma;
      if (inst.generators.size() == 2) {
        auto fr = freeness_bfs(inst.generators[0], inst.generators[1], verification_freeness_depth);
        r.freeness_ok = fr.is_free();
        if (fr.status == FreenessStatus::node_cap_exceeded)
          r.notes.push_back("freeness BFS hit its node cap");
      } else {
        r.freeness_ok = false;
      }
      r.notes.push_back(*r.freeness_ok ? "free to depth 10" : "freeness check failed");
      break;
    }
    case Family::V: {
      bool ok = false;
      for (auto const& entry : sl2_catalog())
        if (entry.id == s.catalog_id) {
          ok = s.base_generators
            == std::vector<BigMatrix>{shear(entry.level, 1, 2, 2), shear(entry.level, 2, 1, 2)};
          for (auto const& g : inst.generators)
            ok = ok && reduce_mod(g, entry.level).is_identity();
        }
      r.mod_image_ok = ok;
      break;
    }
  }
  return r;
}

} // namespace trapdoor

#endif
