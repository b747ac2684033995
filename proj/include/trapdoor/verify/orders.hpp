// Closed-form group orders and the order of K.

#ifndef TRAPDOOR_VERIFY_ORDERS_HPP_
#define TRAPDOOR_VERIFY_ORDERS_HPP_

#include <optional>
#include <vector>

#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/integer.hpp"
#include "trapdoor/linalg/matrix.hpp"
#include "trapdoor/linalg/modular.hpp"
#include "trapdoor/verify/closure.hpp"

namespace trapdoor {

// |SL(3, F_p)| = p^3 (p^3 - 1)(p^2 - 1).
inline Int sl3_order(u64 p) {
  Int q = p;
  return q * q * q * (q * q * q - 1) * (q * q - 1);
}

// |SL(2, F_p)| = p (p^2 - 1).
inline Int sl2_order(u64 p) {
  Int q = p;
  return q * (q * q - 1);
}

inline Int sl_order(int dim, u64 p) {
  check_dim(dim);
  return dim == 2 ? sl2_order(p) : sl3_order(p);
}

inline bool is_upper_unitriangular(ModMatrix const& g) {
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j <= i; ++j)
      if (g(i, j) != (i == j ? 1u : 0u))
        return false;
  return true;
}

// Frattini criterion for the upper unitriangular group U of SL(3, F_p):
// a subgroup of U is all of U iff its image in U / [U, U] = F_p^2
// (the superdiagonal coordinates) is everything. Assumes p prime.
inline bool generates_upper_unipotent(std::vector<ModMatrix> const& gens) {
  if (gens.empty())
    return false;
  int const dim = gens.front().dim;
  u64 const p = gens.front().modulus;
  if (dim != 3)
    return false;
  ResidueMatrix coords;
  for (auto const& g : gens) {
    if (g.dim != dim || g.modulus != p || !is_upper_unitriangular(g))
      return false;
    coords.push_back({g(0, 1), g(1, 2)});
  }
  return rank_mod_p(coords, p) == 2;
}

// |<k_gens>| for prime N: N^3 via the Frattini criterion when K is the
// upper unipotent group, otherwise closure enumeration (nullopt if it
// overflows `cap`).
inline std::optional<Int> k_group_order(std::vector<ModMatrix> const& k_gens, std::size_t cap = default_closure_cap) {
  if (k_gens.empty())
    return Int(1);
  if (generates_upper_unipotent(k_gens)) {
    Int p = k_gens.front().modulus;
    return p * p * p;
  }
  auto order = subgroup_closure(k_gens, cap);
  if (!order)
    return std::nullopt;
  return Int(*order);
}

} // namespace trapdoor

#endif
