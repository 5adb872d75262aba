#include "gtp/oracle.hpp"

#include <algorithm>

#include "gtp/error.hpp"

namespace gtp {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t e = 0; e < exp; ++e) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

// Advances a combination of `r` ascending indices out of n; false when done.
bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t r = combo.size();
  for (std::size_t i = r; i-- > 0;) {
    if (combo[i] < n - r + i) {
      ++combo[i];
      for (std::size_t j = i + 1; j < r; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Enumerates all k^|free| team assignments of the `free` candidates, leaving
// the others removed, and folds them into `result`.
void enumerate_assignments(const CandidatePool& pool, const TargetSet& targets, const std::vector<int>& base,
                           const std::vector<std::size_t>& free, OracleResult& result) {
  const std::size_t k = targets.size();
  Partitioning part(base, k);
  std::vector<std::size_t> digits(free.size(), 0);
  for (std::size_t i : free) part.team[i] = 0;
  while (true) {
    const TeamStats stats = team_stats(pool, part, targets);
    double cost = 0.0;
    for (double c : stats.costs) cost += c;
    ++result.enumerated;
    if (cost < result.optimum) {
      result.optimum = cost;
      result.witness = part;
    }
    const bool nonempty = std::all_of(stats.sizes.begin(), stats.sizes.end(), [](std::size_t s) { return s > 0; });
    if (nonempty && cost < result.optimum_nonempty) {
      result.optimum_nonempty = cost;
      result.witness_nonempty = part;
    }
    std::size_t pos = 0;
    while (pos < free.size() && digits[pos] + 1 == k) {
      digits[pos] = 0;
      part.team[free[pos]] = 0;
      ++pos;
    }
    if (pos == free.size()) break;
    ++digits[pos];
    part.team[free[pos]] = static_cast<int>(digits[pos]);
  }
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // out * (n - r + i) / i stays integral at every step.
    const std::uint64_t num = n - r + i;
    if (out > UINT64_MAX / num) return UINT64_MAX;
    out = out * num / i;
  }
  return out;
}

OracleResult brute_cis(const CandidatePool& pool, ConstRow target, std::size_t count) {
  const std::size_t n = pool.size();
  if (target.size() != pool.dim()) fail(ErrorCode::kDimension, "target dimension does not match the pool");
  if (count >= n) fail(ErrorCode::kBudget, "cannot remove every point");
  const std::uint64_t space = binomial(n, count);
  if (space > kCisEnumerationLimit) {
    fail(ErrorCode::kSizeGuard, "C(" + std::to_string(n) + ", " + std::to_string(count) + ") = " +
                                    std::to_string(space) + " exceeds the enumeration limit");
  }
  OracleResult result;
  std::vector<std::size_t> combo(count);
  for (std::size_t i = 0; i < count; ++i) combo[i] = i;
  std::vector<std::size_t> kept;
  do {
    kept.clear();
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (c < count && combo[c] == i) {
        ++c;
      } else {
        kept.push_back(i);
      }
    }
    const double value = squared_l2(mean_of(pool, kept), target);
    ++result.enumerated;
    if (value < result.optimum) {
      result.optimum = value;
      result.witness = Partitioning(std::vector<int>(n, 0), 1);
      for (std::size_t i : combo) result.witness.team[i] = kRemoved;
    }
  } while (count > 0 && next_combination(combo, n));
  result.optimum_nonempty = result.optimum;
  result.witness_nonempty = result.witness;
  return result;
}

OracleResult brute_cp(const CandidatePool& pool, const TargetSet& targets) {
  return brute_gtp(pool, targets, 0);
}

OracleResult brute_gtp(const CandidatePool& pool, const TargetSet& targets, std::size_t count) {
  const std::size_t n = pool.size();
  const std::size_t k = targets.size();
  check_targets(pool, targets, k);
  if (count >= n) fail(ErrorCode::kBudget, "cannot remove every point");
  const std::uint64_t space = saturating_mul(binomial(n, count), saturating_pow(k, n - count));
  if (space > kPartitionEnumerationLimit) {
    fail(ErrorCode::kSizeGuard, "search space of " + std::to_string(space) + " partitionings exceeds the limit");
  }
  OracleResult result;
  std::vector<std::size_t> combo(count);
  for (std::size_t i = 0; i < count; ++i) combo[i] = i;
  std::vector<int> base(n);
  std::vector<std::size_t> free;
  do {
    free.clear();
    std::fill(base.begin(), base.end(), 0);
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (c < count && combo[c] == i) {
        base[i] = kRemoved;
        ++c;
      } else {
        free.push_back(i);
      }
    }
    enumerate_assignments(pool, targets, base, free, result);
  } while (count > 0 && next_combination(combo, n));
  return result;
}

CisInstance subset_sum_to_cis(const std::vector<std::int64_t>& values, std::size_t size, std::int64_t total) {
  const std::size_t n = values.size();
  if (size < 1 || size > n) fail(ErrorCode::kValidation, "subset size must lie in [1, n]");
  std::vector<double> column(values.begin(), values.end());
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
  return CisInstance{CandidatePool(std::move(ids), std::move(column), 1),
                     Vector{static_cast<double>(total) / static_cast<double>(size)}, n - size};
}

}  // namespace gtp
