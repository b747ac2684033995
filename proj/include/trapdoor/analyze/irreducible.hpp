#ifndef TRAPDOOR_ANALYZE_IRREDUCIBLE_HPP_
#define TRAPDOOR_ANALYZE_IRREDUCIBLE_HPP_

#include <cstddef>
#include <vector>

#include "trapdoor/linalg/matrix.hpp"
#include "trapdoor/linalg/modular.hpp"

namespace trapdoor {

// Dimension of the F_p-span of all words in the reductions of `gens`
// (the enveloping algebra). By Burnside's theorem the image acts
// absolutely irreducibly iff this is dim^2; SL(n, F_p) itself spans
// everything, so a smaller value certifies a proper image.
inline std::size_t enveloping_algebra_dimension(std::vector<BigMatrix> const& gens, u64 p) {
  if (gens.empty())
    return 1;
  int const n = gens.front().dim;
  std::size_t const full = static_cast<std::size_t>(n * n);
  auto const reduced = reduce_all(gens, p);

  // Echelon basis: pivots[k] is the leading column of rows[k], normalized to 1.
  std::vector<std::vector<u64>> rows;
  std::vector<std::size_t> pivots;
  auto insert = [&](ModMatrix const& m) {
    std::vector<u64> v(m.e.begin(), m.e.begin() + static_cast<std::ptrdiff_t>(full));
    for (std::size_t k = 0; k < rows.size(); ++k) {
      u64 f = v[pivots[k]];
      if (f == 0)
        continue;
      for (std::size_t c = 0; c < full; ++c)
        v[c] = sub_mod(v[c], mul_mod(f, rows[k][c], p), p);
    }
    std::size_t lead = 0;
    while (lead < full && v[lead] == 0)
      ++lead;
    if (lead == full)
      return false;
    u64 inv = inv_mod(v[lead], p);
    for (auto& x : v)
      x = mul_mod(x, inv, p);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      u64 f = rows[k][lead];
      if (f != 0)
        for (std::size_t c = 0; c < full; ++c)
          rows[k][c] = sub_mod(rows[k][c], mul_mod(f, v[c], p), p);
    }
    rows.push_back(std::move(v));
    pivots.push_back(lead);
    return true;
  };

  std::vector<ModMatrix> span{ModMatrix::identity(n, p)};
  insert(span.front());
  for (std::size_t k = 0; k < span.size() && rows.size() < full; ++k)
    for (auto const& g : reduced) {
      ModMatrix next = g * span[k];
      if (insert(next))
        span.push_back(std::move(next));
    }
  return rows.size();
}

} // namespace trapdoor

#endif
