#pragma once

// Characteristic-item selection: drop points from a set so the mean of what
// remains approaches a target.
//
// Every solver works on a subset of a pool given by `members`, a list of
// ascending pool indices, and reports its selections as pool indices.

#include <span>
#include <vector>

#include "gtp/core.hpp"

namespace gtp {

enum class CisMethod { kCvx, kGreedy };

struct QpOptions {
  double tol = 1e-7;  // on the projected-gradient residual
  int max_iter = 5000;
};

struct RelaxedSolution {
  Vector x;  // one weight in [0, 1] per member
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

std::vector<std::size_t> all_members(const CandidatePool& pool);

// Removes `count` points one at a time, each time the point whose removal
// brings the remaining mean closest to target. Ties go to the smaller index.
// Returned in removal order.
std::vector<std::size_t> greedy_remove(const CandidatePool& pool, std::span<const std::size_t> members,
                                       ConstRow target, std::size_t count);

// Minimizes D(P x / (m - count), target) over 0 <= x <= 1, sum(x) >= m - count,
// where P holds the member points as columns. Starts from the all-ones vector.
RelaxedSolution solve_relaxed_qp(const CandidatePool& pool, std::span<const std::size_t> members,
                                 ConstRow target, std::size_t count, const QpOptions& options = {});

// Solves the relaxation and keeps the m - count members with the largest
// weights (ties to the smaller index). Returns kept indices, ascending.
std::vector<std::size_t> cvx_select(const CandidatePool& pool, std::span<const std::size_t> members,
                                    ConstRow target, std::size_t count, const QpOptions& options = {});

// Indices removed by `method` when dropping `count` members, ascending.
std::vector<std::size_t> cis_remove(const CandidatePool& pool, std::span<const std::size_t> members,
                                    ConstRow target, std::size_t count, CisMethod method,
                                    const QpOptions& options = {});

struct RemovalBenefit {
  double benefit = 0.0;
  std::vector<std::size_t> removed;  // ascending
};

// Cost decrease D(mean(team), t) - D(mean(team \ S), t) for the set S that
// `method` picks, recomputed from S.
RemovalBenefit removal_benefit(const CandidatePool& pool, std::span<const std::size_t> members,
                               ConstRow target, std::size_t count, CisMethod method,
                               const QpOptions& options = {});

// D(mean of the members with `removed` taken out, target); both lists ascending.
double remaining_objective(const CandidatePool& pool, std::span<const std::size_t> members,
                           std::span<const std::size_t> removed, ConstRow target);

}  // namespace gtp
