// Breadth-first closure of finitely many residue matrices under
// multiplication. For a finite group the generated monoid is the group.

#ifndef TRAPDOOR_VERIFY_CLOSURE_HPP_
#define TRAPDOOR_VERIFY_CLOSURE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "trapdoor/fail.hpp"
#include "trapdoor/linalg/matrix.hpp"

namespace trapdoor {

inline constexpr std::size_t default_closure_cap = 10'000'000;

namespace detail {

// Open-addressing set of fixed-size residue matrices. Entries are stored
// packed in a flat arena; the hash table holds arena indices.
template <typename Word>
class ElementSet {
public:
  explicit ElementSet(int dim) : n_(static_cast<std::size_t>(dim * dim)) { rehash(1024); }

  std::size_t size() const { return count_; }

  // Returns true if inserted.
  bool insert(ModMatrix const& m) {
    if ((count_ + 1) * 2 > table_.size())
      rehash(table_.size() * 2);
    std::size_t h = hash(m.e.data()) & (table_.size() - 1);
    while (table_[h] != empty) {
      if (equal(table_[h], m))
        return false;
      h = (h + 1) & (table_.size() - 1);
    }
    table_[h] = static_cast<std::uint32_t>(count_);
    for (std::size_t i = 0; i < n_; ++i)
      arena_.push_back(static_cast<Word>(m.e[i]));
    ++count_;
    return true;
  }

  bool contains(ModMatrix const& m) const {
    std::size_t h = hash(m.e.data()) & (table_.size() - 1);
    while (table_[h] != empty) {
      if (equal(table_[h], m))
        return true;
      h = (h + 1) & (table_.size() - 1);
    }
    return false;
  }

  ModMatrix at(std::size_t idx, int dim, u64 modulus) const {
    ModMatrix m(dim, modulus);
    for (std::size_t i = 0; i < n_; ++i)
      m.e[i] = arena_[idx * n_ + i];
    return m;
  }

private:
  static constexpr std::uint32_t empty = 0xffffffffu;

  template <typename T>
  std::size_t hash(T const* v) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t i = 0; i < n_; ++i) {
      h ^= static_cast<std::uint64_t>(v[i]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

  bool equal(std::uint32_t idx, ModMatrix const& m) const {
    Word const* p = &arena_[idx * n_];
    for (std::size_t i = 0; i < n_; ++i)
      if (static_cast<u64>(p[i]) != m.e[i])
        return false;
    return true;
  }

  void rehash(std::size_t size) {
    table_.assign(size, empty);
    for (std::size_t idx = 0; idx < count_; ++idx) {
      Word const* p = &arena_[idx * n_];
      std::size_t h = hash(p) & (size - 1);
      while (table_[h] != empty)
        h = (h + 1) & (size - 1);
      table_[h] = static_cast<std::uint32_t>(idx);
    }
  }

  std::size_t n_;
  std::size_t count_ = 0;
  std::vector<Word> arena_;
  std::vector<std::uint32_t> table_;
};

} // namespace detail

// Enumerated subgroup of SL(n, Z/m); `overflow` is set when the closure
// would exceed the element cap, in which case `order` is meaningless.
class EnumeratedGroup {
public:
  EnumeratedGroup(int dim, u64 modulus) : dim_(dim), modulus_(modulus) {
    if (modulus <= 0xffffffffull)
      small_.emplace(dim);
    else
      large_.emplace(dim);
  }

  std::size_t order() const { return small_ ? small_->size() : large_->size(); }
  bool overflow() const { return overflow_; }
  bool contains(ModMatrix const& m) const {
    if (m.dim != dim_ || m.modulus != modulus_)
      return false;
    return small_ ? small_->contains(m) : large_->contains(m);
  }
  int dim() const { return dim_; }
  u64 modulus() const { return modulus_; }

  friend EnumeratedGroup enumerate_subgroup(std::vector<ModMatrix> const&, int, u64, std::size_t);

private:
  bool insert(ModMatrix const& m) { return small_ ? small_->insert(m) : large_->insert(m); }
  ModMatrix at(std::size_t i) const {
    return small_ ? small_->at(i, dim_, modulus_) : large_->at(i, dim_, modulus_);
  }

  int dim_;
  u64 modulus_;
  bool overflow_ = false;
  std::optional<detail::ElementSet<std::uint32_t>> small_;
  std::optional<detail::ElementSet<std::uint64_t>> large_;
};

inline EnumeratedGroup enumerate_subgroup(std::vector<ModMatrix> const& gens, int dim, u64 modulus,
                                          std::size_t cap = default_closure_cap) {
  if (cap < 1)
    fail("closure cap must be >= 1");
  for (auto const& g : gens)
    if (g.dim != dim || g.modulus != modulus)
      fail("subgroup_closure: generators have mismatched dimension or modulus");
  EnumeratedGroup group(dim, modulus);
  group.insert(ModMatrix::identity(dim, modulus));
  std::size_t head = 0;
  while (head < group.order()) {
    ModMatrix x = group.at(head++);
    for (auto const& g : gens) {
      ModMatrix y = x * g;
      if (group.contains(y))
        continue;
      if (group.order() >= cap) {
        group.overflow_ = true;
        return group;
      }
      group.insert(y);
    }
  }
  return group;
}

// Order of <gens> if it is at most `cap`, std::nullopt (OVERFLOW) otherwise.
inline std::optional<std::size_t> subgroup_closure(std::vector<ModMatrix> const& gens,
                                                   std::size_t cap = default_closure_cap) {
  if (gens.empty())
    return 1;
  auto group = enumerate_subgroup(gens, gens.front().dim, gens.front().modulus, cap);
  if (group.overflow())
    return std::nullopt;
  return group.order();
}

} // namespace trapdoor

#endif
