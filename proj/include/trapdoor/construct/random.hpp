#ifndef TRAPDOOR_CONSTRUCT_RANDOM_HPP_
#define TRAPDOOR_CONSTRUCT_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace trapdoor {

// Seeded generator used by every builder. Reproducible within one
// standard-library implementation.
class Rng {
public:
  static constexpr std::string_view algorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_u64(0, n - 1)); }
  bool coin() { return uniform(0, 1) == 1; }
  int sign() { return coin() ? 1 : -1; }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

} // namespace trapdoor

#endif
