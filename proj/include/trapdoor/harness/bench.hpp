#ifndef TRAPDOOR_HARNESS_BENCH_HPP_
#define TRAPDOOR_HARNESS_BENCH_HPP_

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "trapdoor/construct/types.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/verify/verify.hpp"

namespace trapdoor {

inline constexpr double verifier_budget_ms = 1.0;

struct BenchEntry {
  std::string id;
  Family family = Family::I;
  double ms = 0; // mean ground_truth time per call
};

struct BenchReport {
  std::vector<BenchEntry> entries;
  double mean_ms = 0, max_ms = 0;
  bool within_budget() const { return !entries.empty() && mean_ms <= verifier_budget_ms; }
};

// Times ground_truth on already loaded secrets; file I/O is excluded.
inline BenchReport bench_ground_truth(std::vector<TrapdoorSecret> const& secrets, std::size_t repeat = 20) {
  if (repeat == 0)
    fail("bench needs repeat >= 1");
  BenchReport r;
  double sum = 0;
  for (auto const& s : secrets) {
    auto const t0 = std::chrono::steady_clock::now();
    volatile std::size_t sink = 0; // keeps the calls from being optimized out
    for (std::size_t k = 0; k < repeat; ++k)
      sink = sink + ground_truth(s).surjective.size();
    auto const t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count() / static_cast<double>(repeat);
    r.entries.push_back({s.id, s.family, ms});
    sum += ms;
    r.max_ms = std::max(r.max_ms, ms);
  }
  if (!secrets.empty())
    r.mean_ms = sum / static_cast<double>(secrets.size());
  return r;
}

} // namespace trapdoor

#endif
