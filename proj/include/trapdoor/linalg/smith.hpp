// Smith Normal Form of rectangular integer matrices.

#ifndef TRAPDOOR_LINALG_SMITH_HPP_
#define TRAPDOOR_LINALG_SMITH_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/integer.hpp"

namespace trapdoor {

using IntMatrix = std::vector<std::vector<Int>>;

namespace detail {

inline void check_rect(IntMatrix const& a) {
  for (auto const& row : a)
    if (row.size() != a.front().size())
      fail("ragged integer matrix");
}

// Position of the nonzero entry of least magnitude in a[t.., t..].
inline std::optional<std::pair<std::size_t, std::size_t>>
smallest_nonzero(IntMatrix const& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Int best_abs;
  for (std::size_t i = t; i < a.size(); ++i)
    for (std::size_t j = t; j < a[i].size(); ++j) {
      if (a[i][j] == 0)
        continue;
      Int v = abs(a[i][j]);
      if (!best || v < best_abs) {
        best = {i, j};
        best_abs = v;
        if (best_abs == 1)
          return best;
      }
    }
  return best;
}

} // namespace detail

// Invariant factors d_1 | d_2 | ... (min(rows, cols) of them, zeros last).
// Pivoting always takes the smallest nonzero entry of the active block.
inline std::vector<Int> smith_normal_form(IntMatrix a) {
  if (a.empty())
    return {};
  detail::check_rect(a);
  std::size_t const rows = a.size(), cols = a.front().size();
  std::size_t const n = std::min(rows, cols);
  std::vector<Int> out;

  for (std::size_t t = 0; t < n; ++t) {
    auto pos = detail::smallest_nonzero(a, t);
    if (!pos)
      break;
    for (;;) {
      auto [pi, pj] = *pos;
      std::swap(a[t], a[pi]);
      for (auto& row : a)
        std::swap(row[t], row[pj]);

      bool dirty = false;
      Int const piv = a[t][t];
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0)
          continue;
        Int q = a[i][t] / piv;
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j)
            a[i][j] -= q * a[t][j];
        if (a[i][t] != 0)
          dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0)
          continue;
        Int q = a[t][j] / piv;
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i)
            a[i][j] -= q * a[i][t];
        if (a[t][j] != 0)
          dirty = true;
      }
      if (!dirty) {
        // Pivot must divide the rest of the active block.
        std::optional<std::size_t> bad_row;
        for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (a[i][j] % piv != 0) {
              bad_row = i;
              break;
            }
        if (!bad_row)
          break;
        for (std::size_t j = t; j < cols; ++j)
          a[t][j] += a[*bad_row][j];
      }
      // Remainders now sit in row/column t; re-pivot on the smallest of them.
      pos = std::pair<std::size_t, std::size_t>{t, t};
      Int best = abs(a[t][t]);
      for (std::size_t i = t; i < rows; ++i)
        if (a[i][t] != 0 && abs(a[i][t]) < best) {
          best = abs(a[i][t]);
          pos = {i, t};
        }
      for (std::size_t j = t; j < cols; ++j)
        if (a[t][j] != 0 && abs(a[t][j]) < best) {
          best = abs(a[t][j]);
          pos = {t, j};
        }
    }
    out.push_back(abs(a[t][t]));
  }
  out.resize(n, Int(0));
  return out;
}

// Rank over Q: number of nonzero invariant factors.
inline std::size_t integer_rank(IntMatrix const& a) {
  std::size_t r = 0;
  for (auto const& d : smith_normal_form(a))
    if (d != 0)
      ++r;
  return r;
}

} // namespace trapdoor

#endif
