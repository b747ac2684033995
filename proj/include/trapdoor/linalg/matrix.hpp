// Exact 2x2 / 3x3 integer matrices and their reductions modulo m.

#ifndef TRAPDOOR_LINALG_MATRIX_HPP_
#define TRAPDOOR_LINALG_MATRIX_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/integer.hpp"

namespace trapdoor {

inline void check_dim(int dim) {
  if (dim != 2 && dim != 3)
    fail("matrix dimension must be 2 or 3, got ", dim);
}

// Square integer matrix of dimension 2 or 3, row-major, exact entries.
struct BigMatrix {
  int dim = 3;
  std::array<Int, 9> e{};

  BigMatrix() = default;
  explicit BigMatrix(int d) : dim(d) { check_dim(d); }
  BigMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    dim = static_cast<int>(rows.size());
    check_dim(dim);
    int r = 0;
    for (auto const& row : rows) {
      if (static_cast<int>(row.size()) != dim)
        fail("ragged matrix literal");
      int c = 0;
      for (auto const& x : row)
        (*this)(r, c++) = x;
      ++r;
    }
  }

  static BigMatrix identity(int d) {
    BigMatrix m(d);
    for (int i = 0; i < d; ++i)
      m(i, i) = 1;
    return m;
  }

  // I + c * E_{row,col} with 0-based indices.
  static BigMatrix elementary(int d, int row, int col, Int const& c) {
    if (row == col)
      fail("elementary matrix needs row != col");
    BigMatrix m = identity(d);
    m(row, col) = c;
    return m;
  }

  Int& operator()(int r, int c) { return e[static_cast<std::size_t>(r * dim + c)]; }
  Int const& operator()(int r, int c) const { return e[static_cast<std::size_t>(r * dim + c)]; }

  bool is_identity() const { return *this == identity(dim); }

  Int max_abs_entry() const {
    Int m = 0;
    for (int i = 0; i < dim * dim; ++i)
      m = std::max(m, abs(e[static_cast<std::size_t>(i)]));
    return m;
  }

  BigMatrix transposed() const {
    BigMatrix t(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(BigMatrix const& a, BigMatrix const& b) {
    if (a.dim != b.dim)
      return false;
    for (int i = 0; i < a.dim * a.dim; ++i)
      if (a.e[static_cast<std::size_t>(i)] != b.e[static_cast<std::size_t>(i)])
        return false;
    return true;
  }
};

inline std::ostream& operator<<(std::ostream& os, BigMatrix const& m) {
  os << '[';
  for (int i = 0; i < m.dim; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < m.dim; ++j)
      os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

inline BigMatrix mat_mul(BigMatrix const& a, BigMatrix const& b) {
  if (a.dim != b.dim)
    fail("dimension mismatch in mat_mul: ", a.dim, " vs ", b.dim);
  BigMatrix r(a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int k = 0; k < a.dim; ++k) {
      Int const& aik = a(i, k);
      if (aik == 0)
        continue;
      for (int j = 0; j < a.dim; ++j)
        r(i, j) += aik * b(k, j);
    }
  return r;
}

inline BigMatrix operator*(BigMatrix const& a, BigMatrix const& b) { return mat_mul(a, b); }

inline BigMatrix mat_add(BigMatrix const& a, BigMatrix const& b) {
  if (a.dim != b.dim)
    fail("dimension mismatch in mat_add");
  BigMatrix r(a.dim);
  for (std::size_t i = 0; i < 9; ++i)
    r.e[i] = a.e[i] + b.e[i];
  return r;
}

inline Int det(BigMatrix const& a) {
  if (a.dim == 2)
    return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
       - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
       + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

inline BigMatrix adjugate(BigMatrix const& a) {
  BigMatrix r(a.dim);
  if (a.dim == 2) {
    r(0, 0) = a(1, 1);
    r(0, 1) = -a(0, 1);
    r(1, 0) = -a(1, 0);
    r(1, 1) = a(0, 0);
    return r;
  }
  // adj(a)(j, i) = cofactor (i, j)
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      r(j, i) = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
    }
  return r;
}

// Exact inverse of a matrix with determinant +1 or -1.
inline BigMatrix mat_inv_unimodular(BigMatrix const& a) {
  Int d = det(a);
  if (d != 1 && d != -1)
    fail("matrix is not unimodular (det = ", d, ")");
  BigMatrix adj = adjugate(a);
  if (d == -1)
    for (auto& x : adj.e)
      x = -x;
  return adj;
}

inline BigMatrix mat_pow(BigMatrix base, unsigned e) {
  BigMatrix r = BigMatrix::identity(base.dim);
  while (e) {
    if (e & 1)
      r = r * base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return r;
}

// Residue matrix with entries in [0, modulus).
struct ModMatrix {
  int dim = 3;
  u64 modulus = 2;
  std::array<u64, 9> e{};

  ModMatrix() = default;
  ModMatrix(int d, u64 m) : dim(d), modulus(m) {
    check_dim(d);
    if (m < 2)
      fail("modulus must be at least 2");
  }

  static ModMatrix identity(int d, u64 m) {
    ModMatrix r(d, m);
    for (int i = 0; i < d; ++i)
      r(i, i) = 1;
    return r;
  }

  // Entries are reduced into [0, m).
  static ModMatrix from_rows(u64 m, std::initializer_list<std::initializer_list<long long>> rows) {
    ModMatrix r(static_cast<int>(rows.size()), m);
    int i = 0;
    for (auto const& row : rows) {
      if (static_cast<int>(row.size()) != r.dim)
        fail("ragged matrix literal");
      int j = 0;
      for (long long x : row) {
        long long v = x % static_cast<long long>(m);
        r(i, j++) = static_cast<u64>(v < 0 ? v + static_cast<long long>(m) : v);
      }
      ++i;
    }
    return r;
  }

  u64& operator()(int r, int c) { return e[static_cast<std::size_t>(r * dim + c)]; }
  u64 const& operator()(int r, int c) const { return e[static_cast<std::size_t>(r * dim + c)]; }

  bool is_identity() const { return *this == identity(dim, modulus); }

  friend bool operator==(ModMatrix const& a, ModMatrix const& b) {
    return a.dim == b.dim && a.modulus == b.modulus && a.e == b.e;
  }
};

inline std::ostream& operator<<(std::ostream& os, ModMatrix const& m) {
  os << '[';
  for (int i = 0; i < m.dim; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < m.dim; ++j)
      os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << "] mod " << m.modulus;
}

inline ModMatrix mat_mul(ModMatrix const& a, ModMatrix const& b) {
  if (a.dim != b.dim || a.modulus != b.modulus)
    fail("dimension or modulus mismatch in mat_mul");
  ModMatrix r(a.dim, a.modulus);
  u64 const m = a.modulus;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      u128 acc = 0;
      for (int k = 0; k < a.dim; ++k)
        acc += static_cast<u128>(a(i, k)) * b(k, j) % m;
      r(i, j) = static_cast<u64>(acc % m);
    }
  return r;
}

inline ModMatrix operator*(ModMatrix const& a, ModMatrix const& b) { return mat_mul(a, b); }

inline ModMatrix mat_pow(ModMatrix base, u64 e) {
  ModMatrix r = ModMatrix::identity(base.dim, base.modulus);
  while (e) {
    if (e & 1)
      r = r * base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return r;
}

inline ModMatrix transposed(ModMatrix const& a) {
  ModMatrix t(a.dim, a.modulus);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      t(j, i) = a(i, j);
  return t;
}

inline u64 det_mod(ModMatrix const& a) {
  u64 const m = a.modulus;
  auto mul = [m](u64 x, u64 y) { return mul_mod(x, y, m); };
  if (a.dim == 2)
    return sub_mod(mul(a(0, 0), a(1, 1)), mul(a(0, 1), a(1, 0)), m);
  auto minor = [&](int r0, int r1, int c0, int c1) {
    return sub_mod(mul(a(r0, c0), a(r1, c1)), mul(a(r0, c1), a(r1, c0)), m);
  };
  u64 t0 = mul(a(0, 0), minor(1, 2, 1, 2));
  u64 t1 = mul(a(0, 1), minor(1, 2, 0, 2));
  u64 t2 = mul(a(0, 2), minor(1, 2, 0, 1));
  return add_mod(sub_mod(t0, t1, m), t2, m);
}

// Inverse over Z/m for a matrix whose determinant is a unit.
inline ModMatrix inverse_mod(ModMatrix const& a) {
  u64 const m = a.modulus;
  u64 dinv = inv_mod(det_mod(a), m);
  BigMatrix lifted(a.dim);
  for (std::size_t i = 0; i < 9; ++i)
    lifted.e[i] = a.e[i];
  BigMatrix adj = adjugate(lifted);
  ModMatrix r(a.dim, m);
  for (std::size_t i = 0; i < static_cast<std::size_t>(a.dim * a.dim); ++i)
    r.e[i] = mul_mod(residue(adj.e[i], m), dinv, m);
  return r;
}

// Entrywise reduction; a ring homomorphism M_n(Z) -> M_n(Z/m).
inline ModMatrix reduce_mod(BigMatrix const& a, u64 m) {
  if (m < 2)
    fail("reduce_mod needs modulus >= 2, got ", m);
  ModMatrix r(a.dim, m);
  for (std::size_t i = 0; i < static_cast<std::size_t>(a.dim * a.dim); ++i)
    r.e[i] = residue(a.e[i], m);
  return r;
}

inline std::vector<ModMatrix> reduce_all(std::vector<BigMatrix> const& gens, u64 m) {
  std::vector<ModMatrix> out;
  out.reserve(gens.size());
  for (auto const& g : gens)
    out.push_back(reduce_mod(g, m));
  return out;
}

// Lift residues to their representatives in [0, m).
inline BigMatrix to_big(ModMatrix const& a) {
  BigMatrix r(a.dim);
  for (std::size_t i = 0; i < static_cast<std::size_t>(a.dim * a.dim); ++i)
    r.e[i] = a.e[i];
  return r;
}

} // namespace trapdoor

template <>
struct std::hash<trapdoor::BigMatrix> {
  std::size_t operator()(trapdoor::BigMatrix const& m) const noexcept {
    std::size_t h = static_cast<std::size_t>(m.dim);
    for (auto const& x : m.e)
      h = h * 1000003u ^ static_cast<std::size_t>(trapdoor::residue(x, 0xffffffffffffffc5ull));
    return h;
  }
};

#endif
