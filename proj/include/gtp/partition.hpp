#pragma once

// MaxBenefit: assign every candidate to one of k teams so team means approach
// their targets. A benefit-greedy pass builds the teams, then reassignment
// sweeps move single points while that lowers the cost.

#include <vector>

#include "gtp/core.hpp"

namespace gtp {

struct MaxBenefitOptions {
  int max_sweeps = 100;
  double epsilon = 1e-9;  // minimum cost improvement per sweep
};

// Working state with running team sums so each gain is O(d).
struct PartitionState {
  Partitioning partitioning;
  std::vector<Vector> team_sums;
  std::vector<std::size_t> team_sizes;
  int sweep_count = 0;
  // partition_cost after the initial pass and after every sweep.
  std::vector<double> sweep_costs;

  Vector team_mean(std::size_t t) const;
};

// Visits candidates in index order; each joins the team whose distance to its
// target drops the most. Equal gains go to the smaller team, then to the lower
// team index. Empty teams have the zero vector as their mean.
PartitionState initial_assign(const CandidatePool& pool, const TargetSet& targets);

// Full passes in index order. A point leaves its team h for the team j that
// maximises (cost decrease of j on gaining it) - (cost increase of h on losing
// it) if that total is positive; singletons never move. Stops after a pass with
// no move, a pass improving the cost by less than epsilon, or max_sweeps.
PartitionState reassign_sweeps(PartitionState state, const CandidatePool& pool, const TargetSet& targets,
                               const MaxBenefitOptions& options = {});

PartitionState max_benefit_state(const CandidatePool& pool, const TargetSet& targets,
                                 const MaxBenefitOptions& options = {});

Partitioning max_benefit_partition(const CandidatePool& pool, const TargetSet& targets,
                                   const MaxBenefitOptions& options = {});

// Each point to its nearest target, ties to the lower index.
Partitioning closest_target_assign(const CandidatePool& pool, const TargetSet& targets);

}  // namespace gtp
