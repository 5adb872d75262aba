#pragma once

// GuidedSplit: MaxBenefit teams, a per-team table of removal benefits, and a
// dynamic program that spends the global removal budget where it helps most.

#include <limits>
#include <vector>

#include "gtp/cis.hpp"
#include "gtp/core.hpp"
#include "gtp/partition.hpp"

namespace gtp {

inline constexpr double kInfeasibleBenefit = -std::numeric_limits<double>::infinity();

// benefit(i, q) for q in [0, budget]: the cost decrease of team i when the
// points in removal(i, q) leave it. Cells that would empty the team hold
// kInfeasibleBenefit.
class BenefitMatrix {
 public:
  BenefitMatrix() = default;
  BenefitMatrix(std::size_t teams, std::size_t budget);

  // Row-major teams x (budget + 1) values with empty removal sets; lets the
  // allocation be driven by arbitrary tables.
  static BenefitMatrix from_values(std::size_t teams, std::size_t budget, std::vector<double> values);

  std::size_t teams() const noexcept { return teams_; }
  std::size_t budget() const noexcept { return budget_; }

  double benefit(std::size_t team, std::size_t q) const { return values_[team * (budget_ + 1) + q]; }
  bool feasible(std::size_t team, std::size_t q) const { return benefit(team, q) != kInfeasibleBenefit; }
  const std::vector<std::size_t>& removal(std::size_t team, std::size_t q) const {
    return removals_[team * (budget_ + 1) + q];
  }

  void set(std::size_t team, std::size_t q, double value, std::vector<std::size_t> removed);

 private:
  std::size_t teams_ = 0;
  std::size_t budget_ = 0;
  std::vector<double> values_;
  std::vector<std::vector<std::size_t>> removals_;
};

struct BenefitOptions {
  CisMethod method = CisMethod::kCvx;
  QpOptions qp;
  unsigned threads = 1;  // cells are independent; results do not depend on this
};

// Teams are the non-removed members of `part`.
BenefitMatrix build_benefit_matrix(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets,
                                   std::size_t budget, const BenefitOptions& options = {});

struct RemovalAllocation {
  std::vector<std::size_t> per_team;
  double total_benefit = 0.0;
};

// Maximises sum_i benefit(i, q_i) subject to sum_i q_i = budget. Among optimal
// allocations the lexicographically smallest (q_1, ..., q_k) is returned.
// Throws kInfeasible when the teams cannot absorb the budget.
RemovalAllocation allocate_removals_dp(const BenefitMatrix& matrix, std::size_t budget);

// Marks the realizing sets of `allocation` as removed.
Partitioning apply_removals(Partitioning part, const BenefitMatrix& matrix, const RemovalAllocation& allocation);

struct GuidedSplitConfig {
  MaxBenefitOptions partition;
  BenefitOptions benefit;
  // Re-run reassignment sweeps on the kept points after removal while that
  // lowers the cost. Off by default: the algorithm is a single pass.
  bool refine = false;
};

struct GuidedSplitResult {
  Partitioning partitioning;
  BenefitMatrix benefits;
  RemovalAllocation allocation;
  double cost_before_removal = 0.0;
  double cost = 0.0;
  int sweeps = 0;
};

GuidedSplitResult guided_split_detailed(const CandidatePool& pool, const TargetSet& targets, std::size_t budget,
                                        const GuidedSplitConfig& config = {});

SolveReport guided_split(const CandidatePool& pool, const TargetSet& targets, std::size_t budget,
                         const GuidedSplitConfig& config = {});

}  // namespace gtp
