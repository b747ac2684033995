// Word-length BFS freeness check for two-generator subgroups.

#ifndef TRAPDOOR_CONSTRUCT_FREENESS_HPP_
#define TRAPDOOR_CONSTRUCT_FREENESS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "trapdoor/construct/words.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

enum class FreenessStatus { free_to_depth, relation_found, node_cap_exceeded };

struct FreenessResult {
  FreenessStatus status = FreenessStatus::free_to_depth;
  std::size_t words_checked = 0;
  // When a relation is found: two distinct reduced words with equal value
  // (`second` is empty when `first` evaluates to the identity).
  Word first, second;

  bool is_free() const { return status == FreenessStatus::free_to_depth; }
};

inline constexpr std::size_t default_freeness_node_cap = 5'000'000;

// True (free_to_depth) iff all reduced words of length <= depth in
// g1^{+-1}, g2^{+-1} are pairwise distinct and none but the empty word is
// the identity.
//
// Words are tracked by their images modulo two 61-bit primes. Distinct
// images prove distinct matrices, so only fingerprint collisions need the
// exact integer products, which are then recomputed from the words.
inline FreenessResult freeness_bfs(BigMatrix const& g1, BigMatrix const& g2, std::size_t depth,
                                   std::size_t node_cap = default_freeness_node_cap) {
  if (depth < 1)
    fail("freeness_bfs needs depth >= 1");
  if (g1.dim != g2.dim)
    fail("freeness_bfs: dimension mismatch");
  constexpr u64 p1 = (1ull << 61) - 1;
  constexpr u64 p2 = (1ull << 60) - 93;
  std::vector<BigMatrix> const gens{g1, g2};
  std::vector<BigMatrix> const invs = inverses_of(gens);
  std::array<ModMatrix, 4> step1, step2; // letters a, b, A, B
  for (std::size_t k = 0; k < 2; ++k) {
    step1[k] = reduce_mod(gens[k], p1);
    step2[k] = reduce_mod(gens[k], p2);
    step1[k + 2] = reduce_mod(invs[k], p1);
    step2[k + 2] = reduce_mod(invs[k], p2);
  }
  auto letter_of = [](std::size_t k) { return k < 2 ? letter(k, 1) : letter(k - 2, -1); };

  using Key = std::array<u64, 18>;
  struct KeyHash {
    std::size_t operator()(Key const& k) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (u64 x : k)
        h = (h ^ x) * 1099511628211ull;
      return static_cast<std::size_t>(h);
    }
  };
  struct Node {
    std::size_t parent;
    int last; // letter, 0 for the root
    ModMatrix m1, m2;
  };
  auto key_of = [](ModMatrix const& a, ModMatrix const& b) {
    Key k{};
    for (std::size_t i = 0; i < 9; ++i) {
      k[i] = a.e[i];
      k[9 + i] = b.e[i];
    }
    return k;
  };

  std::vector<Node> nodes;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> seen;
  int const dim = g1.dim;
  nodes.push_back({0, 0, ModMatrix::identity(dim, p1), ModMatrix::identity(dim, p2)});
  seen[key_of(nodes[0].m1, nodes[0].m2)].push_back(0);

  auto word_of = [&](std::size_t idx) {
    Word w;
    while (idx != 0) {
      w.push_back(nodes[idx].last);
      idx = nodes[idx].parent;
    }
    return Word(w.rbegin(), w.rend());
  };

  FreenessResult result;
  std::size_t level_begin = 0, level_end = 1;
  for (std::size_t len = 1; len <= depth; ++len) {
    for (std::size_t idx = level_begin; idx < level_end; ++idx) {
      for (std::size_t k = 0; k < 4; ++k) {
        int l = letter_of(k);
        if (nodes[idx].last == -l)
          continue;
        if (nodes.size() >= node_cap) {
          result.status = FreenessStatus::node_cap_exceeded;
          result.words_checked = nodes.size();
          return result;
        }
        Node next{idx, l, nodes[idx].m1 * step1[k], nodes[idx].m2 * step2[k]};
        Key key = key_of(next.m1, next.m2);
        auto& bucket = seen[key];
        nodes.push_back(std::move(next));
        std::size_t const me = nodes.size() - 1;
        if (!bucket.empty()) {
          Word w = word_of(me);
          BigMatrix exact = evaluate(w, gens, invs);
          for (std::size_t other : bucket) {
            Word v = word_of(other);
            if (evaluate(v, gens, invs) == exact) {
              result.status = FreenessStatus::relation_found;
              result.first = w;
              result.second = v;
              result.words_checked = nodes.size();
              return result;
            }
          }
        }
        bucket.push_back(me);
      }
    }
    level_begin = level_end;
    level_end = nodes.size();
  }
  result.words_checked = nodes.size();
  return result;
}

} // namespace trapdoor

#endif
