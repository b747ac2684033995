// Per-prime structural detectors: invariant symmetric forms, the
// octahedral Coxeter presentation and direct mod-p image orders.

#ifndef TRAPDOOR_ANALYZE_FORMS_HPP_
#define TRAPDOOR_ANALYZE_FORMS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"
#include "trapdoor/linalg/modular.hpp"
#include "trapdoor/linalg/smith.hpp"
#include "trapdoor/verify/closure.hpp"

namespace trapdoor {

struct FormCertificate {
  u64 p = 0;
  std::size_t nullspace_dim = 0;
  std::optional<ModMatrix> form; // present iff nullspace_dim >= 1
  bool characteristic_two = false;
};

namespace detail {

// Upper-triangle coordinates of a symmetric 3x3 matrix.
inline constexpr std::array<std::pair<int, int>, 6> sym_coords{
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

inline BigMatrix sym_basis(std::size_t k) {
  BigMatrix e(3);
  auto [i, j] = sym_coords[k];
  e(i, j) = 1;
  e(j, i) = 1;
  return e;
}

} // namespace detail

// Integer coefficient matrix of g^T Q g - Q = 0 in the six unknowns of a
// symmetric Q, six rows per generator (12 x 6 for a pair).
inline IntMatrix form_equation_matrix(std::vector<BigMatrix> const& gens) {
  IntMatrix rows;
  for (auto const& g : gens) {
    if (g.dim != 3)
      fail("form equations need 3x3 generators");
    std::array<BigMatrix, 6> images;
    BigMatrix const gt = g.transposed();
    for (std::size_t k = 0; k < 6; ++k) {
      BigMatrix e = detail::sym_basis(k);
      images[k] = gt * e * g;
      for (std::size_t c = 0; c < 9; ++c)
        images[k].e[c] -= e.e[c];
    }
    for (auto [i, j] : detail::sym_coords) {
      std::vector<Int> row;
      for (std::size_t k = 0; k < 6; ++k)
        row.push_back(images[k](i, j));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// The same system over F_p, built from reductions (no large products).
inline ResidueMatrix form_equation_system(std::vector<BigMatrix> const& gens, u64 p) {
  ResidueMatrix rows;
  for (auto const& g : gens) {
    if (g.dim != 3)
      fail("form equations need 3x3 generators");
    ModMatrix a = reduce_mod(g, p);
    ModMatrix at = transposed(a);
    std::array<ModMatrix, 6> images;
    for (std::size_t k = 0; k < 6; ++k) {
      ModMatrix e = reduce_mod(detail::sym_basis(k), p);
      images[k] = at * e * a;
      for (std::size_t c = 0; c < 9; ++c)
        images[k].e[c] = sub_mod(images[k].e[c], e.e[c], p);
    }
    for (auto [i, j] : detail::sym_coords) {
      std::vector<u64> row;
      for (std::size_t k = 0; k < 6; ++k)
        row.push_back(images[k](i, j));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline FormCertificate detect_invariant_form(std::vector<BigMatrix> const& gens, u64 p) {
  FormCertificate cert;
  cert.p = p;
  cert.characteristic_two = p == 2;
  auto basis = nullspace_mod_p(form_equation_system(gens, p), p);
  cert.nullspace_dim = basis.size();
  if (!basis.empty()) {
    ModMatrix q(3, p);
    for (std::size_t k = 0; k < 6; ++k) {
      auto [i, j] = detail::sym_coords[k];
      q(i, j) = basis.front()[k];
      q(j, i) = basis.front()[k];
    }
    cert.form = q;
  }
  return cert;
}

inline FormCertificate detect_invariant_form(BigMatrix const& a, BigMatrix const& b, u64 p) {
  return detect_invariant_form(std::vector<BigMatrix>{a, b}, p);
}

// Invariant factors of the integer form system. For every prime p the
// kernel dimension mod p is the number of factors divisible by p, so one
// Smith form answers the form question at all primes at once.
inline std::vector<Int> form_invariant_factors(std::vector<BigMatrix> const& gens) {
  return smith_normal_form(form_equation_matrix(gens));
}

inline std::size_t form_nullity_from_factors(std::vector<Int> const& factors, u64 p) {
  std::size_t n = 0;
  for (auto const& d : factors)
    if (d % p == 0)
      ++n;
  return n;
}

// Order of <gens mod p>, or nullopt once it exceeds `cap`.
inline std::optional<std::size_t> mod_p_image_order(std::vector<BigMatrix> const& gens, u64 p,
                                                    std::size_t cap = default_closure_cap) {
  return subgroup_closure(reduce_all(gens, p), cap);
}

// A^4 = B^3 = (AB)^2 = I mod p and |<A, B> mod p| = 24. The relations
// alone only give a quotient of S4; the order pins the image.
inline bool detect_coxeter_s4(BigMatrix const& a, BigMatrix const& b, u64 p) {
  ModMatrix x = reduce_mod(a, p), y = reduce_mod(b, p);
  if (!mat_pow(x, 4).is_identity() || !mat_pow(y, 3).is_identity() || !mat_pow(x * y, 2).is_identity())
    return false;
  auto order = subgroup_closure({x, y}, 25);
  return order && *order == 24;
}

} // namespace trapdoor

#endif
