// Fixed matrices used by the constructions: congruence shears, the
// octahedral rotation group, the upper unipotent group and a generating
// pair of SL(3, Z).

#ifndef TRAPDOOR_CONSTRUCT_PRESETS_HPP_
#define TRAPDOOR_CONSTRUCT_PRESETS_HPP_

#include <string>
#include <vector>

#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"
#include "trapdoor/linalg/modular.hpp"

namespace trapdoor {

// I + N * E_ij. Indices are 1-based as in the E_ij notation.
inline BigMatrix shear(Int const& N, int i, int j, int dim = 3) {
  if (i == j)
    fail("shear needs i != j");
  if (i < 1 || j < 1 || i > dim || j > dim)
    fail("shear indices out of range: (", i, ", ", j, ") for dimension ", dim);
  return BigMatrix::elementary(dim, i - 1, j - 1, N);
}

// The shears I + N * E_ij over all ordered pairs i != j, in lexicographic
// order (six of them in dimension 3).
inline std::vector<BigMatrix> gamma_generators(Int const& N, int dim = 3) {
  if (N < 1)
    fail("gamma_generators needs N >= 1");
  std::vector<BigMatrix> out;
  for (int i = 1; i <= dim; ++i)
    for (int j = 1; j <= dim; ++j)
      if (i != j)
        out.push_back(shear(N, i, j, dim));
  return out;
}

// Rotation group of the cube as determinant-1 signed permutation
// matrices: a quarter turn about z (order 4) and the cyclic coordinate
// permutation (order 3); their product has order 2.
inline std::vector<BigMatrix> octahedral_s4_generators() {
  return {
      BigMatrix{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}},
      BigMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},
  };
}

inline std::vector<BigMatrix> upper_unipotent_generators() {
  return {BigMatrix::elementary(3, 0, 1, 1), BigMatrix::elementary(3, 1, 2, 1)};
}

// E_12(1) and the cyclic permutation matrix; together they generate SL(3, Z).
inline std::vector<BigMatrix> sl3z_generating_pair() {
  return {BigMatrix::elementary(3, 0, 1, 1), BigMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
}

// K given by a named preset or by raw generators mod N.
struct KSpec {
  std::string preset = "octahedral_s4"; // upper_unipotent | octahedral_s4 | full | raw
  std::vector<ModMatrix> raw;

  static KSpec named(std::string name) { return {std::move(name), {}}; }
  static KSpec from_generators(std::vector<ModMatrix> gens) { return {"raw", std::move(gens)}; }
};

// Integer matrices of determinant 1 whose reductions generate K.
inline std::vector<BigMatrix> k_lifts(KSpec const& spec, u64 N) {
  if (spec.preset == "octahedral_s4")
    return octahedral_s4_generators();
  if (spec.preset == "upper_unipotent")
    return upper_unipotent_generators();
  if (spec.preset == "full")
    return sl3z_generating_pair();
  if (spec.preset == "raw") {
    if (spec.raw.empty())
      fail("raw K is given without generators");
    std::vector<BigMatrix> out;
    for (auto const& g : spec.raw) {
      if (g.modulus != N)
        fail("raw K generator has modulus ", g.modulus, ", expected ", N);
      out.push_back(lift_to_sl(g));
    }
    return out;
  }
  fail("unknown K preset '", spec.preset, "'");
}

inline std::vector<ModMatrix> k_generators(KSpec const& spec, u64 N) {
  if (spec.preset == "raw") {
    for (auto const& g : spec.raw)
      if (g.modulus != N || det_mod(g) != 1 % N)
        fail("raw K generator is not in SL(", g.dim, ", Z/", N, ")");
    return spec.raw;
  }
  return reduce_all(k_lifts(spec, N), N);
}

} // namespace trapdoor

#endif
