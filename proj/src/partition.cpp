#include "gtp/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gtp/error.hpp"

namespace gtp {

namespace {

// D(target, sum / size), with the zero vector standing in for an empty mean.
double mean_distance(const Vector& sum, std::size_t size, ConstRow target) {
  double dist = 0.0;
  const double n = static_cast<double>(size);
  for (std::size_t j = 0; j < target.size(); ++j) {
    const double centroid = size == 0 ? 0.0 : sum[j] / n;
    const double diff = centroid - target[j];
    dist += diff * diff;
  }
  return dist;
}

// Same, for the sum with `point` added (sign = +1) or taken out (sign = -1).
double shifted_distance(const Vector& sum, std::size_t size, ConstRow point, double sign,
                        ConstRow target) {
  const std::size_t new_size = sign > 0 ? size + 1 : size - 1;
  double dist = 0.0;
  const double n = static_cast<double>(new_size);
  for (std::size_t j = 0; j < target.size(); ++j) {
    const double centroid = new_size == 0 ? 0.0 : (sum[j] + sign * point[j]) / n;
    const double diff = centroid - target[j];
    dist += diff * diff;
  }
  return dist;
}

void add_point(PartitionState& state, std::size_t t, ConstRow point) {
  auto& sum = state.team_sums[t];
  for (std::size_t j = 0; j < point.size(); ++j) sum[j] += point[j];
  ++state.team_sizes[t];
}

void remove_point(PartitionState& state, std::size_t t, ConstRow point) {
  auto& sum = state.team_sums[t];
  for (std::size_t j = 0; j < point.size(); ++j) sum[j] -= point[j];
  --state.team_sizes[t];
}

}  // namespace

Vector PartitionState::team_mean(std::size_t t) const {
  Vector out = team_sums[t];
  if (team_sizes[t] > 0) {
    for (double& v : out) v /= static_cast<double>(team_sizes[t]);
  } else {
    std::fill(out.begin(), out.end(), 0.0);
  }
  return out;
}

PartitionState initial_assign(const CandidatePool& pool, const TargetSet& targets) {
  const std::size_t k = targets.size();
  check_targets(pool, targets, k);
  PartitionState state;
  state.partitioning = Partitioning(std::vector<int>(pool.size(), kRemoved), k);
  state.team_sums.assign(k, Vector(pool.dim(), 0.0));
  state.team_sizes.assign(k, 0);

  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto point = pool.row(i);
    std::size_t best = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < k; ++t) {
      const double gain = mean_distance(state.team_sums[t], state.team_sizes[t], targets[t]) -
                          shifted_distance(state.team_sums[t], state.team_sizes[t], point, 1.0, targets[t]);
      if (gain > best_gain || (gain == best_gain && state.team_sizes[t] < state.team_sizes[best])) {
        best_gain = gain;
        best = t;
      }
    }
    state.partitioning.team[i] = static_cast<int>(best);
    add_point(state, best, point);
  }
  state.sweep_costs.push_back(partition_cost(pool, state.partitioning, targets));
  return state;
}

PartitionState reassign_sweeps(PartitionState state, const CandidatePool& pool, const TargetSet& targets,
                               const MaxBenefitOptions& options) {
  const std::size_t k = targets.size();
  check_targets(pool, targets, k);
  validate(state.partitioning, pool);
  if (state.partitioning.k != k) fail(ErrorCode::kValidation, "state team count does not match targets");
  if (state.sweep_costs.empty()) state.sweep_costs.push_back(partition_cost(pool, state.partitioning, targets));

  std::vector<double> team_cost(k);
  while (state.sweep_count < options.max_sweeps) {
    for (std::size_t t = 0; t < k; ++t) {
      team_cost[t] = mean_distance(state.team_sums[t], state.team_sizes[t], targets[t]);
    }
    bool moved = false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const int current = state.partitioning.team[i];
      if (current == kRemoved) continue;
      const auto h = static_cast<std::size_t>(current);
      if (state.team_sizes[h] <= 1) continue;
      const auto point = pool.row(i);
      const double loss =
          shifted_distance(state.team_sums[h], state.team_sizes[h], point, -1.0, targets[h]) - team_cost[h];
      std::size_t best = h;
      double best_benefit = 0.0;
      for (std::size_t t = 0; t < k; ++t) {
        if (t == h) continue;
        const double gain =
            team_cost[t] - shifted_distance(state.team_sums[t], state.team_sizes[t], point, 1.0, targets[t]);
        const double benefit = gain - loss;
        // Benefits within rounding of zero are not moves.
        const double floor = 1e-12 * std::max(1.0, team_cost[h] + team_cost[t]);
        if (benefit > floor && benefit > best_benefit) {
          best_benefit = benefit;
          best = t;
        }
      }
      if (best == h) continue;
      remove_point(state, h, point);
      add_point(state, best, point);
      state.partitioning.team[i] = static_cast<int>(best);
      team_cost[h] = mean_distance(state.team_sums[h], state.team_sizes[h], targets[h]);
      team_cost[best] = mean_distance(state.team_sums[best], state.team_sizes[best], targets[best]);
      moved = true;
    }
    ++state.sweep_count;
    const double previous = state.sweep_costs.back();
    state.sweep_costs.push_back(partition_cost(pool, state.partitioning, targets));
    if (!moved || previous - state.sweep_costs.back() < options.epsilon) break;
  }
  return state;
}

PartitionState max_benefit_state(const CandidatePool& pool, const TargetSet& targets,
                                 const MaxBenefitOptions& options) {
  return reassign_sweeps(initial_assign(pool, targets), pool, targets, options);
}

Partitioning max_benefit_partition(const CandidatePool& pool, const TargetSet& targets,
                                   const MaxBenefitOptions& options) {
  return max_benefit_state(pool, targets, options).partitioning;
}

Partitioning closest_target_assign(const CandidatePool& pool, const TargetSet& targets) {
  check_targets(pool, targets, targets.size());
  Partitioning part(std::vector<int>(pool.size(), 0), targets.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const double dist = squared_l2(pool.row(i), targets[t]);
      if (dist < best) {
        best = dist;
        part.team[i] = static_cast<int>(t);
      }
    }
  }
  return part;
}

}  // namespace gtp
