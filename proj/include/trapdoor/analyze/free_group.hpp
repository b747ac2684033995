// Rank-1 toolkit, part two: subgroups of free groups via Stallings
// folding, and Nielsen reduction of generating pairs.

#ifndef TRAPDOOR_ANALYZE_FREE_GROUP_HPP_
#define TRAPDOOR_ANALYZE_FREE_GROUP_HPP_

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include "trapdoor/construct/words.hpp"
#include "trapdoor/fail.hpp"

namespace trapdoor {

// Folded, labelled graph with a base state. Direction 2k is letter k+1,
// direction 2k+1 its inverse; next[s][d] == -1 means no edge.
struct FoldedGraph {
  std::size_t rank = 2;
  std::size_t base = 0;
  std::vector<std::vector<long>> next;
  bool complete = false;

  std::size_t states() const { return next.size(); }
  // Index of the subgroup in the free group when the graph is complete.
  std::optional<std::size_t> index() const {
    if (!complete)
      return std::nullopt;
    return states();
  }
  // Follows a word from the base state; nullopt if it falls off the graph.
  std::optional<std::size_t> follow(Word const& w) const {
    long s = static_cast<long>(base);
    for (int l : w) {
      s = next[static_cast<std::size_t>(s)][direction(l)];
      if (s < 0)
        return std::nullopt;
    }
    return static_cast<std::size_t>(s);
  }

  static std::size_t direction(int l) {
    return 2 * (static_cast<std::size_t>(std::abs(l)) - 1) + (l < 0 ? 1 : 0);
  }
};

namespace detail {

class Folder {
public:
  explicit Folder(std::size_t rank) : rank_(rank) { add_state(); }

  std::size_t add_state() {
    out_.emplace_back(2 * rank_, -1);
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void add_edge(std::size_t u, std::size_t d, std::size_t v) {
    link(u, d, v);
    link(v, d ^ 1u, u);
    drain();
  }

  FoldedGraph finish() {
    FoldedGraph g;
    g.rank = rank_;
    std::vector<long> id(out_.size(), -1);
    std::size_t const root = find(0);
    id[root] = 0;
    std::vector<std::size_t> order{root};
    for (std::size_t s = 0; s < out_.size(); ++s) {
      std::size_t r = find(s);
      if (id[r] < 0) {
        id[r] = static_cast<long>(order.size());
        order.push_back(r);
      }
    }
    g.next.assign(order.size(), std::vector<long>(2 * rank_, -1));
    g.complete = true;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t d = 0; d < 2 * rank_; ++d) {
        long t = out_[order[k]][d];
        if (t >= 0)
          g.next[k][d] = id[find(static_cast<std::size_t>(t))];
        else
          g.complete = false;
      }
    return g;
  }

private:
  void link(std::size_t u, std::size_t d, std::size_t v) {
    u = find(u);
    v = find(v);
    long& slot = out_[u][d];
    if (slot < 0)
      slot = static_cast<long>(v);
    else if (find(static_cast<std::size_t>(slot)) != v)
      pending_.emplace_back(static_cast<std::size_t>(slot), v);
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.back();
      pending_.pop_back();
      a = find(a);
      b = find(b);
      if (a == b)
        continue;
      parent_[b] = a;
      for (std::size_t d = 0; d < 2 * rank_; ++d) {
        long t = out_[b][d];
        if (t >= 0)
          link(a, d, static_cast<std::size_t>(t));
      }
    }
  }

  std::size_t rank_;
  std::vector<std::vector<long>> out_;
  std::vector<std::size_t> parent_;
  std::vector<std::pair<std::size_t, std::size_t>> pending_;
};

} // namespace detail

// Folds the wedge of loops spelled by `words` at the base state. The graph
// is complete iff the subgroup has finite index, which then equals the
// number of states.
inline FoldedGraph stallings_fold(std::vector<Word> const& words, std::size_t rank = 2) {
  detail::Folder f(rank);
  for (auto const& raw : words) {
    Word w = free_reduce(raw);
    if (w.empty())
      continue;
    std::size_t cur = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (static_cast<std::size_t>(std::abs(w[k])) > rank)
        fail("letter ", w[k], " exceeds free rank ", rank);
      std::size_t target = k + 1 == w.size() ? 0 : f.add_state();
      f.add_edge(cur, FoldedGraph::direction(w[k]), target);
      cur = target;
    }
  }
  return f.finish();
}

struct NielsenPair {
  Word first, second;
  bool is_basis = false;
  std::size_t moves = 0;
};

// Applies length-reducing Nielsen moves (w_i <- w_i w_j^{+-1} or
// w_j^{+-1} w_i) until none shortens the pair. The pair is a free basis
// of F(a, b) iff it reduces to {a^{+-1}, b^{+-1}}.
inline NielsenPair nielsen_reduce_pair(Word w1, Word w2) {
  NielsenPair r;
  r.first = free_reduce(w1);
  r.second = free_reduce(w2);
  for (;;) {
    std::size_t const total = r.first.size() + r.second.size();
    std::optional<std::pair<int, Word>> best; // (which, replacement)
    std::size_t best_total = total;
    for (int which = 0; which < 2; ++which) {
      Word const& tgt = which == 0 ? r.first : r.second;
      Word const& src = which == 0 ? r.second : r.first;
      Word const src_inv = inverse(src);
      for (Word const* s : {&src, &src_inv})
        for (bool right : {true, false}) {
          Word cand = right ? concat(tgt, *s) : concat(*s, tgt);
          std::size_t t = total - tgt.size() + cand.size();
          if (t < best_total) {
            best_total = t;
            best = std::pair{which, std::move(cand)};
          }
        }
    }
    if (!best)
      break;
    (best->first == 0 ? r.first : r.second) = std::move(best->second);
    ++r.moves;
  }
  r.is_basis = r.first.size() == 1 && r.second.size() == 1
            && std::abs(r.first[0]) != std::abs(r.second[0]);
  return r;
}

} // namespace trapdoor

#endif
