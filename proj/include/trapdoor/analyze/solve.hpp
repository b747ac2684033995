// Solver pipelines that work from the published matrices only.

#ifndef TRAPDOOR_ANALYZE_SOLVE_HPP_
#define TRAPDOOR_ANALYZE_SOLVE_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trapdoor/analyze/descent.hpp"
#include "trapdoor/analyze/forms.hpp"
#include "trapdoor/analyze/free_group.hpp"
#include "trapdoor/analyze/irreducible.hpp"
#include "trapdoor/analyze/level.hpp"
#include "trapdoor/analyze/sl2.hpp"
#include "trapdoor/analyze/transvection.hpp"
#include "trapdoor/construct/types.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/verify/orders.hpp"

namespace trapdoor {

// ---- Families II and III: one verdict per listed prime ----

struct PrimeVerdict {
  u64 p = 0;
  bool surjective = false;
  bool certified = false; // false: no obstruction found, YES is a guess
  std::string method;
};

struct PrimeListSolution {
  std::vector<PrimeVerdict> verdicts;
  std::vector<TransvectionReport> transvections;
};

struct PrimeSolveOptions {
  Int enumeration_limit = 1'000'000; // enumerate the image when |SL(3, F_p)| is at most this
};

inline PrimeVerdict solve_prime(std::vector<BigMatrix> const& gens, u64 p, PrimeSolveOptions const& opt = {}) {
  PrimeVerdict v;
  v.p = p;
  if (gens.size() == 2 && detect_coxeter_s4(gens[0], gens[1], p)) {
    v.certified = true;
    v.method = "coxeter-s4";
    return v;
  }
  auto form = detect_invariant_form(gens, p);
  if (form.nullspace_dim > 0) {
    v.certified = true;
    v.method = "invariant-form(dim " + std::to_string(form.nullspace_dim) + ")";
    return v;
  }
  std::size_t alg = enveloping_algebra_dimension(gens, p);
  if (alg < 9) {
    v.certified = true;
    v.method = "reducible(algebra dim " + std::to_string(alg) + ")";
    return v;
  }
  if (sl3_order(p) <= opt.enumeration_limit) {
    auto order = subgroup_closure(reduce_all(gens, p), static_cast<std::size_t>(sl3_order(p)) + 1);
    v.surjective = order && Int(*order) == sl3_order(p);
    v.certified = true;
    v.method = "enumeration";
    return v;
  }
  v.surjective = true;
  v.method = "no-obstruction";
  return v;
}

inline PrimeListSolution solve_prime_list(Instance const& inst, PrimeSolveOptions const& opt = {}) {
  if (inst.question != QuestionKind::prime_list_yesno)
    fail("instance '", inst.id, "' does not ask a per-prime question");
  PrimeListSolution out;
  out.transvections = detect_transvection(inst.generators);
  for (u64 p : inst.primes)
    out.verdicts.push_back(solve_prime(inst.generators, p, opt));
  return out;
}

// ---- Family V: index in SL(2, Z) ----

struct SL2Solution {
  std::optional<IndexValue> index; // nullopt = UNKNOWN
  std::optional<Int> level;
  std::vector<SL2Word> words; // S, T words of the generators
  std::string reason;
};

namespace detail {

inline bool all_in_gamma(std::vector<BigMatrix> const& gens, Int const& n) {
  for (auto const& g : gens)
    if (identity_defect_gcd(g) % n != 0)
      return false;
  return true;
}

// True when the set contains +-S^{+-1} and +-T^{+-1}. Since S^2 = -I, either
// sign of S or T together with the other generator recovers S and T.
inline bool contains_s_and_t(std::vector<BigMatrix> const& gens) {
  auto neg = [](BigMatrix m) {
    for (auto& x : m.e)
      x = -x;
    return m;
  };
  BigMatrix const s = sl2_S(), t = sl2_T(), ti = mat_inv_unimodular(t);
  bool has_s = false, has_t = false;
  for (auto const& g : gens) {
    has_s = has_s || g == s || g == neg(s);
    has_t = has_t || g == t || g == ti || g == neg(t) || g == neg(ti);
  }
  return has_s && has_t;
}

// Searches products of at most `max_length` generators (and inverses) for
// +-S and +-T^{+-1}; finding both proves <gens> = SL(2, Z).
inline bool reaches_s_and_t(std::vector<BigMatrix> const& gens, std::size_t max_length = 4) {
  std::vector<BigMatrix> letters = gens;
  for (auto const& g : gens)
    letters.push_back(mat_inv_unimodular(g));
  std::vector<BigMatrix> layer{BigMatrix::identity(2)}, seen;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<BigMatrix> next;
    for (auto const& w : layer)
      for (auto const& l : letters) {
        BigMatrix x = w * l;
        if (std::find(seen.begin(), seen.end(), x) == seen.end()) {
          seen.push_back(x);
          next.push_back(x);
        }
      }
    if (contains_s_and_t(seen))
      return true;
    layer = std::move(next);
  }
  return false;
}

} // namespace detail

// Pipeline: S/T words for each generator; level detection; at level 2
// Sanov words are folded in the free group F(a, b) of index 12; at a prime
// level q >= 3 with all generators in Gamma(q), Gamma(q) is free of rank
// 1 + q(q^2 - 1)/12 > 2, so a finite-index subgroup needs more than two
// generators. Never reads a secret.
inline SL2Solution solve_family5(Instance const& inst) {
  SL2Solution out;
  for (auto const& g : inst.generators)
    if (g.dim != 2)
      fail("solve_family5 needs 2x2 generators");
  if (inst.generators.empty())
    fail("solve_family5 needs generators");
  for (auto const& g : inst.generators)
    out.words.push_back(sl2_word_decompose(g));

  out.level = detect_congruence_level(inst.generators);
  if (!out.level) {
    auto reduced = inst.generators.size() >= 2 ? nielsen_descent(inst.generators, 200).generators : inst.generators;
    if (detail::reaches_s_and_t(reduced)) {
      out.index = IndexValue::finite(1);
      out.reason = "S and T are short words in the generators";
    } else {
      out.reason = "no congruence level detected";
    }
    return out;
  }
  Int const q = *out.level;
  if (!detail::all_in_gamma(inst.generators, q)) {
    out.reason = "level " + q.str() + " found by probes only; generators not all in Gamma(level)";
    return out;
  }

  if (q == 2) {
    std::vector<Word> words;
    bool all_positive = true;
    for (auto const& g : inst.generators) {
      auto w = sanov_decompose(g);
      if (!w) {
        out.reason = "Sanov decomposition failed";
        return out;
      }
      all_positive = all_positive && w->second == 1;
      words.push_back(w->first);
    }
    auto graph = stallings_fold(words);
    if (!graph.complete) {
      out.index = IndexValue::infinity();
      out.reason = "folded graph incomplete: infinite index in the Sanov group";
      return out;
    }
    // With all signs +1 the group lies in the Sanov group, which misses -I.
    // Otherwise the signs still define a homomorphism when the words form a
    // free basis of their span (rank = states + 1 generators).
    if (all_positive || words.size() == graph.states() + 1) {
      out.index = IndexValue::finite(Int(12) * graph.states());
      out.reason = "folded graph complete with " + std::to_string(graph.states()) + " state(s); Sanov group has index 12";
    } else {
      out.reason = "folded graph complete but -I membership undecided";
    }
    return out;
  }

  Int const rank = 1 + q * (q * q - 1) / 12; // free rank of Gamma(q), q prime >= 3
  if (Int(inst.generators.size()) < rank) {
    out.index = IndexValue::infinity();
    out.reason = "inside Gamma(" + q.str() + "), free of rank " + rank.str() + " > " +
                 std::to_string(inst.generators.size()) + " generators";
  } else {
    out.reason = "inside Gamma(" + q.str() + ") with enough generators to reach finite index";
  }
  return out;
}

// ---- Family IV: detector report, no commitment ----

struct IndexReport {
  std::optional<Int> level;
  std::vector<TransvectionReport> transvections;
  std::optional<std::size_t> image_order;   // |<gens> mod level|, when enumerable
  std::optional<Int> cokernel_index;        // |SL(3, F_level)| / image_order
  bool image_trivial = false;               // all generators in Gamma(level)
  std::size_t descent_start = 0, descent_end = 0;
  std::string descent_stop;
  std::vector<std::string> notes;
};

// The cokernel index is a lower bound for the index of <gens>. The two
// agree iff Gamma(level) lies in <gens>, which this report does not decide.
inline IndexReport index_report(Instance const& inst, std::size_t closure_cap = default_closure_cap,
                                std::size_t descent_steps = 60) {
  IndexReport r;
  r.level = detect_congruence_level(inst.generators);
  r.transvections = detect_transvection(inst.generators);
  if (inst.generators.size() >= 2) {
    DescentOptions opt;
    opt.max_rounds = descent_steps;
    opt.beam_width = 2;
    auto d = nielsen_descent(inst.generators, opt);
    r.descent_start = d.scores.front();
    r.descent_end = d.scores.back();
    r.descent_stop = descent_stop_name(d.stop);
  }
  if (!r.level) {
    r.notes.push_back("no congruence level detected");
    return r;
  }
  if (!fits_u64(*r.level))
    return r;
  u64 const n = static_cast<u64>(*r.level);
  r.image_trivial = detail::all_in_gamma(inst.generators, *r.level);
  if (inst.dim == 3 && generates_upper_unipotent(reduce_all(inst.generators, n))) {
    r.image_order = static_cast<std::size_t>(n) * n * n;
    r.notes.push_back("image mod level is the upper unitriangular group (Frattini criterion)");
  } else {
    r.image_order = mod_p_image_order(inst.generators, n, closure_cap);
  }
  if (r.image_order)
    r.cokernel_index = sl_order(inst.dim, n) / Int(*r.image_order);
  else
    r.notes.push_back("image mod level exceeds the closure cap");
  if (r.image_trivial)
    r.notes.push_back("all generators lie in Gamma(level); a free pair there has infinite index");
  return r;
}

} // namespace trapdoor

#endif
