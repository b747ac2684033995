// Independent reference implementations used only by the tests. They are
// deliberately naive: small sizes, direct definitions, no shared code
// with the library beyond the Int type.

#ifndef TRAPDOOR_TESTS_ORACLES_HPP_
#define TRAPDOOR_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <vector>

#include "trapdoor/construct/words.hpp"
#include "trapdoor/linalg/integer.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace oracle {

using trapdoor::Int;
using Rows = std::vector<std::vector<Int>>;

inline Rows rows_of(trapdoor::BigMatrix const& m) {
  Rows r(static_cast<std::size_t>(m.dim), std::vector<Int>(static_cast<std::size_t>(m.dim)));
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j)
      r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return r;
}

inline Rows schoolbook(Rows const& a, Rows const& b) {
  std::size_t n = a.size(), m = b.front().size(), k = b.size();
  Rows c(n, std::vector<Int>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < k; ++t)
        c[i][j] += a[i][t] * b[t][j];
  return c;
}

// Laplace expansion along the first row.
inline Int det(Rows const& a) {
  std::size_t n = a.size();
  if (n == 0)
    return 1;
  if (n == 1)
    return a[0][0];
  Int d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Rows minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Int> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c)
          row.push_back(a[i][j]);
      minor.push_back(row);
    }
    Int term = a[0][c] * det(minor);
    d += (c % 2 == 0) ? term : Int(-term);
  }
  return d;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors: D_k = gcd of all k x k
// minors, d_k = D_k / D_{k-1}.
inline std::vector<Int> snf_by_minors(Rows const& a) {
  std::size_t r = a.size(), c = a.empty() ? 0 : a.front().size();
  std::size_t m = std::min(r, c);
  std::vector<Int> out;
  Int prev = 1;
  bool zero = false;
  for (std::size_t k = 1; k <= m; ++k) {
    if (zero) {
      out.push_back(0);
      continue;
    }
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(r, k, 0, cur, rs);
    subsets(c, k, 0, cur, cs);
    Int g = 0;
    for (auto const& ri : rs)
      for (auto const& ci : cs) {
        Rows sub;
        for (auto i : ri) {
          std::vector<Int> row;
          for (auto j : ci)
            row.push_back(a[i][j]);
          sub.push_back(row);
        }
        g = trapdoor::gcd(g, det(sub));
      }
    if (g == 0) {
      zero = true;
      out.push_back(0);
      continue;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Number of 3x3 matrices over F_p with determinant 1, by listing all p^9.
inline std::uint64_t count_sl3(std::int64_t p) {
  std::uint64_t count = 0;
  std::int64_t total = 1;
  for (int k = 0; k < 9; ++k)
    total *= p;
  std::int64_t e[9];
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t x = code;
    for (auto& v : e) {
      v = x % p;
      x /= p;
    }
    std::int64_t d = e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6])
                   + e[2] * (e[3] * e[7] - e[4] * e[6]);
    if (((d % p) + p) % p == 1)
      ++count;
  }
  return count;
}

// A transitive action of F(a, b) on {0, ..., n-1}: perm[0] for a, perm[1] for b.
struct Action {
  std::size_t n = 1;
  std::vector<std::size_t> perm[2], inv[2];

  std::size_t act(std::size_t x, int letter) const {
    std::size_t g = static_cast<std::size_t>(std::abs(letter) - 1);
    return letter > 0 ? perm[g][x] : inv[g][x];
  }
  std::size_t follow(trapdoor::Word const& w, std::size_t x = 0) const {
    for (int l : w)
      x = act(x, l);
    return x;
  }
};

inline bool transitive(Action const& a) {
  std::vector<bool> seen(a.n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (int l : {1, -1, 2, -2}) {
      std::size_t y = a.act(x, l);
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == a.n;
}

inline Action random_transitive_action(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Action a;
    a.n = n;
    for (int g = 0; g < 2; ++g) {
      a.perm[g].resize(n);
      std::iota(a.perm[g].begin(), a.perm[g].end(), 0);
      std::shuffle(a.perm[g].begin(), a.perm[g].end(), rng);
      a.inv[g].resize(n);
      for (std::size_t x = 0; x < n; ++x)
        a.inv[g][a.perm[g][x]] = x;
    }
    if (transitive(a))
      return a;
  }
}

// Schreier generators of the stabilizer of 0: with a spanning tree of
// coset representatives t(x), the words t(x) l t(x.l)^-1 generate it.
inline std::vector<trapdoor::Word> schreier_generators(Action const& a) {
  std::vector<trapdoor::Word> rep(a.n);
  std::vector<bool> seen(a.n, false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    std::size_t x = queue[k];
    for (int l : {1, -1, 2, -2}) {
      std::size_t y = a.act(x, l);
      if (!seen[y]) {
        seen[y] = true;
        rep[y] = rep[x];
        rep[y].push_back(l);
        queue.push_back(y);
      }
    }
  }
  std::vector<trapdoor::Word> gens;
  for (std::size_t x = 0; x < a.n; ++x)
    for (int l : {1, 2}) {
      trapdoor::Word w = rep[x];
      w.push_back(l);
      auto back = trapdoor::inverse(rep[a.act(x, l)]);
      w.insert(w.end(), back.begin(), back.end());
      w = trapdoor::free_reduce(w);
      if (!w.empty())
        gens.push_back(w);
    }
  return gens;
}

} // namespace oracle

#endif
