#pragma once

#include <vector>

#include "gtp/core.hpp"
#include "gtp/rng.hpp"

namespace testutil {

inline std::vector<gtp::Vector> uniform_rows(gtp::Rng& rng, std::size_t n, std::size_t d, double lo = 0.0,
                                             double hi = 1.0) {
  std::vector<gtp::Vector> rows(n, gtp::Vector(d));
  for (auto& r : rows) {
    for (auto& v : r) v = rng.uniform(lo, hi);
  }
  return rows;
}

inline gtp::CandidatePool random_pool(gtp::Rng& rng, std::size_t n, std::size_t d) {
  return gtp::CandidatePool::from_rows(uniform_rows(rng, n, d));
}

inline gtp::TargetSet random_targets(gtp::Rng& rng, std::size_t k, std::size_t d) {
  return gtp::TargetSet::from_rows(uniform_rows(rng, k, d));
}

// The three-point instance where nearest-target assignment goes wrong.
inline gtp::CandidatePool triple_pool() {
  return gtp::CandidatePool::from_rows({"a", "b", "c"}, {{1, 0}, {-1, 0}, {-1, 20}});
}

inline gtp::TargetSet triple_targets() { return gtp::TargetSet::from_rows({{0, 0}, {-1, 10}}); }

inline gtp::CandidatePool line_pool(const std::vector<double>& xs) {
  std::vector<gtp::Vector> rows;
  for (double x : xs) rows.push_back({x});
  return gtp::CandidatePool::from_rows(rows);
}

}  // namespace testutil
