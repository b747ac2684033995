// Linear algebra over Z/m: kernels over prime fields and lifting
// SL(n, Z/m) elements back to SL(n, Z).

#ifndef TRAPDOOR_LINALG_MODULAR_HPP_
#define TRAPDOOR_LINALG_MODULAR_HPP_

#include <cstddef>
#include <vector>

#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/integer.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

using ResidueMatrix = std::vector<std::vector<u64>>;
using ResidueVector = std::vector<u64>;

namespace detail {

// In-place reduced row echelon form over F_p; returns pivot columns.
inline std::vector<std::size_t> rref_mod_p(ResidueMatrix& a, u64 p) {
  std::vector<std::size_t> pivots;
  if (a.empty())
    return pivots;
  std::size_t const rows = a.size(), cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a[i][c] % p != 0) {
        sel = i;
        break;
      }
    if (sel == rows)
      continue;
    std::swap(a[r], a[sel]);
    u64 inv = inv_mod(a[r][c] % p, p);
    for (std::size_t j = 0; j < cols; ++j)
      a[r][j] = mul_mod(a[r][j] % p, inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] % p == 0)
        continue;
      u64 f = a[i][c] % p;
      for (std::size_t j = 0; j < cols; ++j)
        a[i][j] = sub_mod(a[i][j] % p, mul_mod(f, a[r][j], p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

} // namespace detail

inline std::size_t rank_mod_p(ResidueMatrix a, u64 p) {
  return detail::rref_mod_p(a, p).size();
}

// Basis of the right kernel {v : a v = 0} over F_p. Primality of p is the
// caller's responsibility.
inline std::vector<ResidueVector> nullspace_mod_p(ResidueMatrix a, u64 p) {
  if (a.empty())
    return {};
  for (auto const& row : a)
    if (row.size() != a.front().size())
      fail("ragged residue matrix");
  std::size_t const cols = a.front().size();
  auto pivots = detail::rref_mod_p(a, p);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots)
    is_pivot[c] = true;
  std::vector<ResidueVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f])
      continue;
    ResidueVector v(cols, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      v[pivots[k]] = sub_mod(0, a[k][f], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace detail {

struct ElementaryOp {
  int row, col;
  u64 c;
};

// Symmetric representative in (-m/2, m/2].
inline Int centered(u64 r, u64 m) {
  if (r > m / 2)
    return Int(r) - Int(m);
  return Int(r);
}

} // namespace detail

// Integer matrix of determinant exactly 1 reducing to x modulo m.
//
// x is reduced to the identity by elementary row/column operations over
// Z/m: integer Euclid on each column (valid because the column is
// unimodular mod m), then the remaining unit diagonal is cleared with
// Whitehead's identity diag(u, 1/u) = w(u) w(-1), w(u) = E12(u) E21(-1/u)
// E12(u). Each operation lifts entrywise to a transvection over Z.
inline BigMatrix lift_to_sl(ModMatrix const& x) {
  u64 const m = x.modulus;
  int const n = x.dim;
  if (det_mod(x) != 1 % m)
    fail("lift_to_sl: determinant is not 1 modulo ", m);

  ModMatrix w = x;
  std::vector<detail::ElementaryOp> left, right;
  auto row_op = [&](int i, int j, u64 c) { // row_i += c * row_j
    c %= m;
    if (c == 0)
      return;
    for (int k = 0; k < n; ++k)
      w(i, k) = add_mod(w(i, k), mul_mod(c, w(j, k), m), m);
    left.push_back({i, j, c});
  };
  auto col_op = [&](int i, int j, u64 c) { // col_j += c * col_i
    c %= m;
    if (c == 0)
      return;
    for (int k = 0; k < n; ++k)
      w(k, j) = add_mod(w(k, j), mul_mod(c, w(k, i), m), m);
    right.push_back({i, j, c});
  };

  for (int t = 0; t < n; ++t) {
    for (;;) {
      int best = -1;
      int nonzero = 0;
      for (int i = t; i < n; ++i)
        if (w(i, t) != 0) {
          ++nonzero;
          if (best < 0 || w(i, t) < w(best, t))
            best = i;
        }
      if (best < 0)
        fail("lift_to_sl: matrix is singular modulo ", m);
      if (nonzero == 1) {
        if (best != t) {
          row_op(t, best, 1);
          row_op(best, t, m - 1);
        }
        break;
      }
      for (int i = t; i < n; ++i)
        if (i != best && w(i, t) != 0) {
          u64 q = w(i, t) / w(best, t);
          row_op(i, best, (m - q % m) % m);
        }
    }
    u64 inv = inv_mod(w(t, t), m);
    for (int j = t + 1; j < n; ++j)
      if (w(t, j) != 0)
        col_op(t, j, (m - mul_mod(w(t, j), inv, m)) % m);
  }

  for (int t = 0; t + 1 < n; ++t) {
    u64 v = w(t, t);
    u64 vinv = inv_mod(v, m);
    // diag(1/v, v) on rows (t, t+1), applied rightmost factor first
    row_op(t, t + 1, m - 1);
    row_op(t + 1, t, 1);
    row_op(t, t + 1, m - 1);
    row_op(t, t + 1, vinv);
    row_op(t + 1, t, (m - v) % m);
    row_op(t, t + 1, vinv);
  }
  if (!w.is_identity())
    fail("lift_to_sl: internal reduction did not reach the identity");

  // x = L1^-1 ... Lk^-1 * Rl^-1 ... R1^-1
  BigMatrix result = BigMatrix::identity(n);
  for (auto const& op : left)
    result = result * BigMatrix::elementary(n, op.row, op.col, detail::centered((m - op.c) % m, m));
  for (auto it = right.rbegin(); it != right.rend(); ++it)
    result = result * BigMatrix::elementary(n, it->row, it->col, detail::centered((m - it->c) % m, m));
  return result;
}

} // namespace trapdoor

#endif
