#pragma once

// Benchmark sweeps: for every sweep value, algorithm and repetition, build an
// instance with seed base_seed + repetition, solve it, and record the cost.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gtp/core.hpp"
#include "gtp/solve.hpp"
#include "json.hpp"

namespace gtp {

enum class TargetMethod { kPlanted, kMean, kSample, kSobol, kFile };
TargetMethod parse_target_method(std::string_view name);
std::string_view target_method_name(TargetMethod method);

// kPlanted needs planted targets; kFile needs file targets.
TargetSet make_targets(TargetMethod method, const CandidatePool& pool, std::size_t k, std::uint64_t seed,
                       const TargetSet* planted, const TargetSet* file);

enum class SweepVariable { kBudget, kTeams, kSize };
SweepVariable parse_sweep_variable(std::string_view name);
std::string_view sweep_variable_name(SweepVariable var);

struct ExperimentConfig {
  std::vector<Algorithm> algorithms;
  SweepVariable sweep = SweepVariable::kBudget;
  std::vector<std::size_t> values;
  std::size_t n = 500;
  std::size_t k = 5;
  std::size_t budget = 50;
  std::size_t d = 10;
  double sigma = 0.2;
  TargetMethod target_method = TargetMethod::kPlanted;
  std::string pool_path;     // empty: synthetic instances
  std::string targets_path;  // for TargetMethod::kFile
  std::size_t repetitions = 25;
  std::uint64_t base_seed = 0;
  CisMethod cis = CisMethod::kCvx;
  unsigned workers = 1;
  bool record_timing = true;  // false writes 0 for every wall time
};

// Throws kValidation for an unusable configuration.
void validate(const ExperimentConfig& config);
ExperimentConfig experiment_from_json(const nlohmann::json& doc);
nlohmann::json experiment_to_json(const ExperimentConfig& config);

struct ExperimentRow {
  std::size_t sweep_value = 0;
  std::string algorithm;
  std::size_t repetition = 0;
  double cost = 0.0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // or "error:<code>: <message>"
};

struct SummaryRow {
  std::size_t sweep_value = 0;
  std::string algorithm;
  double mean_cost = 0.0;
  double mean_wall_time_s = 0.0;
  std::size_t runs = 0;
  std::size_t errors = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // sweep value, algorithm, repetition order
  std::vector<SummaryRow> summary;
};

// Synthetic instances with fixed n use m = floor((n - l) / k) points per team,
// so the generated pool has k * m + l candidates.
struct InstanceShape {
  std::size_t n;
  std::size_t k;
  std::size_t budget;
};
InstanceShape instance_shape(const ExperimentConfig& config, std::size_t sweep_value);

ExperimentResult run_experiment(const ExperimentConfig& config);

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);

}  // namespace gtp
