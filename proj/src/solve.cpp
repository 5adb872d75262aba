#include "gtp/solve.hpp"

#include <array>
#include <chrono>

#include "gtp/baselines.hpp"
#include "gtp/error.hpp"
#include "gtp/guided_split.hpp"

namespace gtp {

namespace {

struct NamedAlgorithm {
  Algorithm algo;
  std::string_view name;
};

constexpr std::array<NamedAlgorithm, 9> kAlgorithms = {{
    {Algorithm::kGuidedSplit, "guided_split"},
    {Algorithm::kMaxBenefit, "max_benefit"},
    {Algorithm::kRandom, "random"},
    {Algorithm::kKMeans, "kmeans"},
    {Algorithm::kKMeansTargets, "kmeans_t"},
    {Algorithm::kKMeansMinusMinus, "kmeans_mm"},
    {Algorithm::kKnnKMeans, "knn_kmeans"},
    {Algorithm::kBtfCvx, "btf_cvx"},
    {Algorithm::kBtfGreedy, "btf_greedy"},
}};

}  // namespace

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> algos = [] {
    std::vector<Algorithm> out;
    for (const auto& a : kAlgorithms) out.push_back(a.algo);
    return out;
  }();
  return algos;
}

std::string_view algorithm_name(Algorithm algo) {
  for (const auto& a : kAlgorithms) {
    if (a.algo == algo) return a.name;
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  std::string valid;
  for (const auto& a : kAlgorithms) {
    if (a.name == name) return a.algo;
    if (!valid.empty()) valid += ", ";
    valid += a.name;
  }
  fail(ErrorCode::kUnknownAlgorithm, "unknown algorithm '" + std::string(name) + "'; valid names: " + valid);
}

CisMethod parse_cis_method(std::string_view name) {
  if (name == "cvx") return CisMethod::kCvx;
  if (name == "greedy") return CisMethod::kGreedy;
  fail(ErrorCode::kValidation, "unknown CIS method '" + std::string(name) + "'; valid: cvx, greedy");
}

std::string_view cis_method_name(CisMethod method) { return method == CisMethod::kCvx ? "cvx" : "greedy"; }

SolveReport solve(Algorithm algo, const CandidatePool& pool, const TargetSet& targets, const SolveConfig& config) {
  const std::size_t k = targets.size();
  check_targets(pool, targets, k);
  if (config.budget + k > pool.size()) {
    fail(ErrorCode::kInfeasible, "cannot remove " + std::to_string(config.budget) + " of " +
                                     std::to_string(pool.size()) + " points and keep " + std::to_string(k) +
                                     " nonempty teams");
  }
  BenefitOptions benefit{config.cis, config.qp, config.threads};

  const auto start = std::chrono::steady_clock::now();
  Partitioning part;
  int iterations = 0;
  switch (algo) {
    case Algorithm::kGuidedSplit: {
      GuidedSplitConfig gs{config.partition, benefit, config.refine};
      GuidedSplitResult result = guided_split_detailed(pool, targets, config.budget, gs);
      part = std::move(result.partitioning);
      iterations = result.sweeps;
      break;
    }
    case Algorithm::kMaxBenefit: {
      if (config.budget != 0) fail(ErrorCode::kBudget, "max_benefit partitions every point; use l = 0");
      PartitionState state = max_benefit_state(pool, targets, config.partition);
      part = std::move(state.partitioning);
      iterations = state.sweep_count;
      break;
    }
    case Algorithm::kRandom:
      part = post_pipeline(pool, random_assignment(pool, k, config.seed), targets, config.budget, benefit);
      break;
    case Algorithm::kKMeans: {
      KMeansResult km = kmeans_plain(pool, k, config.seed);
      iterations = km.iterations;
      part = post_pipeline(pool, km.partitioning, targets, config.budget, benefit);
      break;
    }
    case Algorithm::kKMeansTargets: {
      KMeansResult km = kmeans_target_seeded(pool, targets);
      iterations = km.iterations;
      part = post_pipeline(pool, km.partitioning, targets, config.budget, benefit);
      break;
    }
    case Algorithm::kKMeansMinusMinus: {
      KMeansResult km = kmeans_minus_minus(pool, k, config.budget, config.seed);
      iterations = km.iterations;
      part = relabel_to_targets(pool, km.partitioning, targets);
      break;
    }
    case Algorithm::kKnnKMeans:
      part = relabel_to_targets(pool, knn_then_kmeans(pool, k, config.budget, config.seed), targets);
      break;
    case Algorithm::kBtfCvx:
      part = best_team_first(pool, targets, config.budget, CisMethod::kCvx, config.qp);
      break;
    case Algorithm::kBtfGreedy:
      part = best_team_first(pool, targets, config.budget, CisMethod::kGreedy, config.qp);
      break;
  }
  const auto stop = std::chrono::steady_clock::now();

  SolveReport report = make_report(pool, part, targets);
  report.algorithm = std::string(algorithm_name(algo));
  report.iterations = iterations;
  report.seed = config.seed;
  report.wall_time_s = std::chrono::duration<double>(stop - start).count();
  if (report.removed_ids.size() != config.budget) {
    fail(ErrorCode::kValidation, report.algorithm + " removed " + std::to_string(report.removed_ids.size()) +
                                     " points instead of " + std::to_string(config.budget));
  }
  return report;
}

}  // namespace gtp
