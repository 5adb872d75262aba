#pragma once

// Exhaustive solvers for tiny instances. Size guards are hard errors so an
// oracle is never silently partial.

#include <cstdint>
#include <limits>
#include <vector>

#include "gtp/core.hpp"

namespace gtp {

inline constexpr std::uint64_t kCisEnumerationLimit = 1'000'000;
inline constexpr std::uint64_t kPartitionEnumerationLimit = 10'000'000;

struct OracleResult {
  double optimum = std::numeric_limits<double>::infinity();
  Partitioning witness;  // CIS witnesses use a single team
  // Optimum restricted to partitionings whose k teams are all nonempty;
  // infinite when no such partitioning exists.
  double optimum_nonempty = std::numeric_limits<double>::infinity();
  Partitioning witness_nonempty;
  std::uint64_t enumerated = 0;
};

// Saturating binomial coefficient.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

// min over |S| = count of D(mean(pool \ S), target).
OracleResult brute_cis(const CandidatePool& pool, ConstRow target, std::size_t count);
// min over all k^n assignments of the partition cost.
OracleResult brute_cp(const CandidatePool& pool, const TargetSet& targets);
// min over removal sets of size `count` times assignments of the rest.
OracleResult brute_gtp(const CandidatePool& pool, const TargetSet& targets, std::size_t count);

struct CisInstance {
  CandidatePool pool;
  Vector target;
  std::size_t remove = 0;
};

// Subset-sum (values, pick `size` of them summing to `total`) as a 1-D CIS
// instance: keep `size` values with mean total / size. The CIS optimum is zero
// exactly when a qualifying subset exists.
CisInstance subset_sum_to_cis(const std::vector<std::int64_t>& values, std::size_t size, std::int64_t total);

}  // namespace gtp
