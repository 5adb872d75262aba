#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gtp/cis.hpp"
#include "gtp/core.hpp"
#include "gtp/partition.hpp"

namespace gtp {

enum class Algorithm {
  kGuidedSplit,
  kMaxBenefit,
  kRandom,
  kKMeans,
  kKMeansTargets,
  kKMeansMinusMinus,
  kKnnKMeans,
  kBtfCvx,
  kBtfGreedy,
};

const std::vector<Algorithm>& all_algorithms();
std::string_view algorithm_name(Algorithm algo);
// Throws kUnknownAlgorithm listing the valid names.
Algorithm parse_algorithm(std::string_view name);

CisMethod parse_cis_method(std::string_view name);
std::string_view cis_method_name(CisMethod method);

struct SolveConfig {
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  CisMethod cis = CisMethod::kCvx;
  QpOptions qp;
  MaxBenefitOptions partition;
  unsigned threads = 1;
  bool refine = false;
};

// Runs one algorithm with k = targets.size(). wall_time_s covers the solve
// only. Every algorithm returns exactly `budget` removed candidates.
SolveReport solve(Algorithm algo, const CandidatePool& pool, const TargetSet& targets, const SolveConfig& config);

}  // namespace gtp
