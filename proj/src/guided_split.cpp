#include "gtp/guided_split.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "gtp/error.hpp"

namespace gtp {

BenefitMatrix::BenefitMatrix(std::size_t teams, std::size_t budget)
    : teams_(teams),
      budget_(budget),
      values_(teams * (budget + 1), kInfeasibleBenefit),
      removals_(teams * (budget + 1)) {}

BenefitMatrix BenefitMatrix::from_values(std::size_t teams, std::size_t budget, std::vector<double> values) {
  if (values.size() != teams * (budget + 1)) fail(ErrorCode::kValidation, "benefit table has the wrong size");
  BenefitMatrix out(teams, budget);
  out.values_ = std::move(values);
  return out;
}

void BenefitMatrix::set(std::size_t team, std::size_t q, double value, std::vector<std::size_t> removed) {
  values_[team * (budget_ + 1) + q] = value;
  removals_[team * (budget_ + 1) + q] = std::move(removed);
}

BenefitMatrix build_benefit_matrix(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets,
                                   std::size_t budget, const BenefitOptions& options) {
  validate(part, pool);
  check_targets(pool, targets, part.k);
  const std::size_t k = part.k;
  std::vector<std::vector<std::size_t>> teams(k);
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (part.team[i] != kRemoved) teams[static_cast<std::size_t>(part.team[i])].push_back(i);
  }

  BenefitMatrix matrix(k, budget);
  struct Cell {
    std::size_t team;
    std::size_t q;
  };
  std::vector<Cell> cells;
  for (std::size_t t = 0; t < k; ++t) {
    if (teams[t].empty()) {
      matrix.set(t, 0, 0.0, {});
      continue;
    }
    const std::size_t max_q = std::min(budget, teams[t].size() - 1);
    for (std::size_t q = 0; q <= max_q; ++q) cells.push_back({t, q});
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) {
      try {
        const Cell cell = cells[c];
        RemovalBenefit rb =
            removal_benefit(pool, teams[cell.team], targets[cell.team], cell.q, options.method, options.qp);
        matrix.set(cell.team, cell.q, rb.benefit, std::move(rb.removed));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(cells.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool_threads;
    for (unsigned w = 0; w < threads; ++w) pool_threads.emplace_back(worker);
    for (auto& th : pool_threads) th.join();
  }
  if (error) std::rethrow_exception(error);
  return matrix;
}

RemovalAllocation allocate_removals_dp(const BenefitMatrix& matrix, std::size_t budget) {
  const std::size_t k = matrix.teams();
  if (k == 0) fail(ErrorCode::kValidation, "benefit matrix has no teams");
  if (budget > matrix.budget()) {
    fail(ErrorCode::kInfeasible, "budget " + std::to_string(budget) + " exceeds the benefit table width " +
                                     std::to_string(matrix.budget()));
  }
  const std::size_t width = budget + 1;
  // best[i][j]: best benefit from the first i teams removing exactly j points.
  std::vector<double> best((k + 1) * width, kInfeasibleBenefit);
  best[0] = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 0; j <= budget; ++j) {
      double value = kInfeasibleBenefit;
      for (std::size_t q = 0; q <= j; ++q) {
        const double prev = best[(i - 1) * width + (j - q)];
        if (prev == kInfeasibleBenefit || !matrix.feasible(i - 1, q)) continue;
        value = std::max(value, prev + matrix.benefit(i - 1, q));
      }
      best[i * width + j] = value;
    }
  }
  if (best[k * width + budget] == kInfeasibleBenefit) {
    fail(ErrorCode::kInfeasible,
         "teams are too small to remove " + std::to_string(budget) + " points without emptying one");
  }

  auto tight = [&](std::size_t i, std::size_t j, std::size_t q) {
    const double prev = best[(i - 1) * width + (j - q)];
    return prev != kInfeasibleBenefit && matrix.feasible(i - 1, q) &&
           prev + matrix.benefit(i - 1, q) == best[i * width + j];
  };
  // on_path[i][j]: state (i, j) reaches (k, budget) through tight transitions.
  std::vector<char> on_path((k + 1) * width, 0);
  on_path[k * width + budget] = 1;
  for (std::size_t i = k; i >= 1; --i) {
    for (std::size_t j = 0; j <= budget; ++j) {
      if (!on_path[i * width + j]) continue;
      for (std::size_t q = 0; q <= j; ++q) {
        if (tight(i, j, q)) on_path[(i - 1) * width + (j - q)] = 1;
      }
    }
  }

  RemovalAllocation out;
  out.per_team.resize(k);
  std::size_t used = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t q = 0; used + q <= budget; ++q) {
      if (on_path[i * width + used + q] && tight(i, used + q, q)) {
        out.per_team[i - 1] = q;
        used += q;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) out.total_benefit += matrix.benefit(i, out.per_team[i]);
  return out;
}

Partitioning apply_removals(Partitioning part, const BenefitMatrix& matrix, const RemovalAllocation& allocation) {
  for (std::size_t t = 0; t < allocation.per_team.size(); ++t) {
    for (std::size_t i : matrix.removal(t, allocation.per_team[t])) part.team[i] = kRemoved;
  }
  return part;
}

namespace {

// Reassignment sweeps over the kept points only; removed points stay out.
Partitioning refine_kept(const CandidatePool& pool, const TargetSet& targets, const Partitioning& part,
                         const MaxBenefitOptions& options, int& sweeps) {
  const auto removed = part.removed();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (part.team[i] != kRemoved) kept.push_back(i);
  }
  const CandidatePool sub = pool.subset(kept);
  PartitionState state;
  state.partitioning = Partitioning(std::vector<int>(kept.size()), part.k);
  state.team_sums.assign(part.k, Vector(pool.dim(), 0.0));
  state.team_sizes.assign(part.k, 0);
  for (std::size_t s = 0; s < kept.size(); ++s) {
    const int t = part.team[kept[s]];
    state.partitioning.team[s] = t;
    auto row = sub.row(s);
    auto& sum = state.team_sums[static_cast<std::size_t>(t)];
    for (std::size_t j = 0; j < row.size(); ++j) sum[j] += row[j];
    ++state.team_sizes[static_cast<std::size_t>(t)];
  }
  state = reassign_sweeps(std::move(state), sub, targets, options);
  sweeps += state.sweep_count;
  Partitioning out = part;
  for (std::size_t s = 0; s < kept.size(); ++s) out.team[kept[s]] = state.partitioning.team[s];
  return out;
}

}  // namespace

GuidedSplitResult guided_split_detailed(const CandidatePool& pool, const TargetSet& targets, std::size_t budget,
                                        const GuidedSplitConfig& config) {
  const std::size_t k = targets.size();
  check_targets(pool, targets, k);
  if (budget + k > pool.size()) {
    fail(ErrorCode::kInfeasible, "cannot remove " + std::to_string(budget) + " of " + std::to_string(pool.size()) +
                                     " points and keep " + std::to_string(k) + " nonempty teams");
  }
  GuidedSplitResult result;
  const PartitionState state = max_benefit_state(pool, targets, config.partition);
  result.sweeps = state.sweep_count;
  result.cost_before_removal = partition_cost(pool, state.partitioning, targets);
  result.benefits = build_benefit_matrix(pool, state.partitioning, targets, budget, config.benefit);
  result.allocation = allocate_removals_dp(result.benefits, budget);
  result.partitioning = apply_removals(state.partitioning, result.benefits, result.allocation);
  result.cost = partition_cost(pool, result.partitioning, targets);

  if (config.refine && budget > 0) {
    Partitioning refined = refine_kept(pool, targets, result.partitioning, config.partition, result.sweeps);
    const double refined_cost = partition_cost(pool, refined, targets);
    if (refined_cost < result.cost) {
      result.partitioning = std::move(refined);
      result.cost = refined_cost;
    }
  }
  return result;
}

SolveReport guided_split(const CandidatePool& pool, const TargetSet& targets, std::size_t budget,
                         const GuidedSplitConfig& config) {
  GuidedSplitResult result = guided_split_detailed(pool, targets, budget, config);
  SolveReport report = make_report(pool, result.partitioning, targets);
  report.algorithm = "guided_split";
  report.iterations = result.sweeps;
  return report;
}

}  // namespace gtp
