#ifndef TRAPDOOR_ANALYZE_TRANSVECTION_HPP_
#define TRAPDOOR_ANALYZE_TRANSVECTION_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

// g - I = c * u v^T with u, v primitive integer vectors and c > 0.
struct TransvectionReport {
  std::size_t index = 0;
  std::vector<Int> column; // u
  std::vector<Int> row;    // v
  Int c = 0;

  // The transvection stays a nontrivial transvection mod p iff p does not divide c.
  bool survives_mod(u64 p) const { return c % p != 0; }
};

// Rank-1 test on g - I through its 2x2 minors.
inline std::optional<TransvectionReport> as_transvection(BigMatrix const& g) {
  int const n = g.dim;
  BigMatrix d = g;
  for (int i = 0; i < n; ++i)
    d(i, i) -= 1;
  int pr = -1, pc = -1;
  for (int i = 0; i < n && pr < 0; ++i)
    for (int j = 0; j < n; ++j)
      if (d(i, j) != 0) {
        pr = i;
        pc = j;
        break;
      }
  if (pr < 0)
    return std::nullopt; // g = I
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d(i, j) * d(pr, pc) != d(i, pc) * d(pr, j))
        return std::nullopt;

  TransvectionReport rep;
  Int cg = 0, rg = 0, all = 0;
  for (int i = 0; i < n; ++i)
    cg = gcd(cg, d(i, pc));
  for (int j = 0; j < n; ++j)
    rg = gcd(rg, d(pr, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      all = gcd(all, d(i, j));
  for (int i = 0; i < n; ++i)
    rep.column.push_back(d(i, pc) / cg);
  for (int j = 0; j < n; ++j)
    rep.row.push_back(d(pr, j) / rg);
  rep.c = all;
  // Fix the sign so that d = c * u v^T.
  if (rep.column[static_cast<std::size_t>(pr)] * rep.row[static_cast<std::size_t>(pc)] * all != d(pr, pc))
    for (auto& x : rep.column)
      x = -x;
  return rep;
}

inline std::vector<TransvectionReport> detect_transvection(std::vector<BigMatrix> const& gens) {
  std::vector<TransvectionReport> out;
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (auto rep = as_transvection(gens[k])) {
      rep->index = k;
      out.push_back(std::move(*rep));
    }
  return out;
}

} // namespace trapdoor

#endif
