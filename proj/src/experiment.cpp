#include "gtp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <memory>
#include <ostream>
#include <thread>

#include "gtp/datagen.hpp"
#include "gtp/error.hpp"
#include "gtp/io.hpp"
#include "gtp/rng.hpp"

namespace gtp {

TargetMethod parse_target_method(std::string_view name) {
  if (name == "planted") return TargetMethod::kPlanted;
  if (name == "mean") return TargetMethod::kMean;
  if (name == "sample") return TargetMethod::kSample;
  if (name == "sobol") return TargetMethod::kSobol;
  if (name == "file") return TargetMethod::kFile;
  fail(ErrorCode::kValidation,
       "unknown target method '" + std::string(name) + "'; valid: planted, mean, sample, sobol, file");
}

std::string_view target_method_name(TargetMethod method) {
  switch (method) {
    case TargetMethod::kPlanted: return "planted";
    case TargetMethod::kMean: return "mean";
    case TargetMethod::kSample: return "sample";
    case TargetMethod::kSobol: return "sobol";
    case TargetMethod::kFile: return "file";
  }
  return "unknown";
}

TargetSet make_targets(TargetMethod method, const CandidatePool& pool, std::size_t k, std::uint64_t seed,
                       const TargetSet* planted, const TargetSet* file) {
  switch (method) {
    case TargetMethod::kPlanted:
      if (planted == nullptr) fail(ErrorCode::kValidation, "planted targets need a synthetic instance");
      return *planted;
    case TargetMethod::kMean: return targets_mean(pool, k);
    case TargetMethod::kSample: return targets_sample(pool, k, seed);
    case TargetMethod::kSobol: return targets_sobol(k, pool.dim());
    case TargetMethod::kFile:
      if (file == nullptr) fail(ErrorCode::kValidation, "target method 'file' needs a targets file");
      if (file->size() != k) {
        fail(ErrorCode::kValidation, "targets file has " + std::to_string(file->size()) + " targets, need " +
                                         std::to_string(k));
      }
      return *file;
  }
  fail(ErrorCode::kValidation, "unknown target method");
}

SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "l") return SweepVariable::kBudget;
  if (name == "k") return SweepVariable::kTeams;
  if (name == "n") return SweepVariable::kSize;
  fail(ErrorCode::kValidation, "unknown sweep variable '" + std::string(name) + "'; valid: l, k, n");
}

std::string_view sweep_variable_name(SweepVariable var) {
  switch (var) {
    case SweepVariable::kBudget: return "l";
    case SweepVariable::kTeams: return "k";
    case SweepVariable::kSize: return "n";
  }
  return "unknown";
}

InstanceShape instance_shape(const ExperimentConfig& config, std::size_t sweep_value) {
  InstanceShape shape{config.n, config.k, config.budget};
  switch (config.sweep) {
    case SweepVariable::kBudget: shape.budget = sweep_value; break;
    case SweepVariable::kTeams: shape.k = sweep_value; break;
    case SweepVariable::kSize: shape.n = sweep_value; break;
  }
  return shape;
}

void validate(const ExperimentConfig& config) {
  if (config.algorithms.empty()) fail(ErrorCode::kValidation, "experiment needs at least one algorithm");
  if (config.values.empty()) fail(ErrorCode::kValidation, "experiment needs at least one sweep value");
  if (config.repetitions < 1) fail(ErrorCode::kValidation, "repetitions must be at least 1");
  if (config.d < 1) fail(ErrorCode::kValidation, "d must be at least 1");
  if (!(config.sigma >= 0.0)) fail(ErrorCode::kValidation, "sigma must be nonnegative");
  if (config.target_method == TargetMethod::kFile && config.targets_path.empty()) {
    fail(ErrorCode::kValidation, "target method 'file' needs targets_path");
  }
  if (config.target_method == TargetMethod::kPlanted && !config.pool_path.empty()) {
    fail(ErrorCode::kValidation, "planted targets are only available for synthetic instances");
  }
  for (std::size_t v : config.values) {
    if (v == 0 && config.sweep != SweepVariable::kBudget) {
      fail(ErrorCode::kValidation, "sweep values for k and n must be positive");
    }
    const InstanceShape shape = instance_shape(config, v);
    if (shape.k == 0) fail(ErrorCode::kValidation, "k must be positive");
    if (shape.budget + shape.k > shape.n) {
      fail(ErrorCode::kValidation, "sweep value " + std::to_string(v) + " is infeasible: need k + l <= n");
    }
  }
}

ExperimentConfig experiment_from_json(const nlohmann::json& doc) {
  try {
    ExperimentConfig config;
    for (const auto& name : doc.at("algorithms")) config.algorithms.push_back(parse_algorithm(name.get<std::string>()));
    config.sweep = parse_sweep_variable(doc.value("sweep", std::string("l")));
    config.values = doc.at("values").get<std::vector<std::size_t>>();
    config.n = doc.value("n", config.n);
    config.k = doc.value("k", config.k);
    config.budget = doc.value("l", config.budget);
    config.d = doc.value("d", config.d);
    config.sigma = doc.value("sigma", config.sigma);
    config.target_method = parse_target_method(doc.value("target_method", std::string("planted")));
    config.pool_path = doc.value("pool", std::string());
    config.targets_path = doc.value("targets", std::string());
    config.repetitions = doc.value("reps", config.repetitions);
    config.base_seed = doc.value("seed", config.base_seed);
    config.cis = parse_cis_method(doc.value("cis_method", std::string("cvx")));
    config.workers = doc.value("workers", config.workers);
    config.record_timing = doc.value("timing", config.record_timing);
    return config;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed experiment config: ") + e.what());
  }
}

nlohmann::json experiment_to_json(const ExperimentConfig& config) {
  nlohmann::json doc;
  std::vector<std::string> names;
  for (Algorithm a : config.algorithms) names.emplace_back(algorithm_name(a));
  doc["algorithms"] = names;
  doc["sweep"] = sweep_variable_name(config.sweep);
  doc["values"] = config.values;
  doc["n"] = config.n;
  doc["k"] = config.k;
  doc["l"] = config.budget;
  doc["d"] = config.d;
  doc["sigma"] = config.sigma;
  doc["target_method"] = target_method_name(config.target_method);
  doc["pool"] = config.pool_path;
  doc["targets"] = config.targets_path;
  doc["reps"] = config.repetitions;
  doc["seed"] = config.base_seed;
  doc["cis_method"] = cis_method_name(config.cis);
  doc["workers"] = config.workers;
  doc["timing"] = config.record_timing;
  return doc;
}

namespace {

struct Instance {
  std::unique_ptr<CandidatePool> pool;
  std::unique_ptr<TargetSet> targets;
};

// Seeded subset of n rows, kept in file order.
CandidatePool sample_rows(const CandidatePool& pool, std::size_t n, std::uint64_t seed) {
  if (n > pool.size()) {
    fail(ErrorCode::kValidation, "requested n = " + std::to_string(n) + " but the pool has " +
                                     std::to_string(pool.size()) + " rows");
  }
  if (n == pool.size()) return pool;
  Rng rng(seed);
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t t = 0; t < n; ++t) std::swap(order[t], order[t + static_cast<std::size_t>(rng.below(order.size() - t))]);
  order.resize(n);
  std::sort(order.begin(), order.end());
  return pool.subset(order);
}

Instance build_instance(const ExperimentConfig& config, const InstanceShape& shape, std::uint64_t seed,
                        const CandidatePool* file_pool, const TargetSet* file_targets) {
  Instance inst;
  std::unique_ptr<TargetSet> planted;
  if (file_pool == nullptr) {
    const std::size_t m = (shape.n - shape.budget) / shape.k;
    SynthInstance synth = gen_synthetic({shape.k, m, shape.budget, config.d, config.sigma, seed});
    inst.pool = std::make_unique<CandidatePool>(std::move(synth.pool));
    planted = std::make_unique<TargetSet>(std::move(synth.targets));
  } else {
    inst.pool = std::make_unique<CandidatePool>(sample_rows(*file_pool, shape.n, seed));
  }
  inst.targets = std::make_unique<TargetSet>(
      make_targets(config.target_method, *inst.pool, shape.k, seed, planted.get(), file_targets));
  return inst;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::unique_ptr<CandidatePool> file_pool;
  std::unique_ptr<TargetSet> file_targets;
  if (!config.pool_path.empty()) file_pool = std::make_unique<CandidatePool>(load_pool(config.pool_path));
  if (config.target_method == TargetMethod::kFile) {
    file_targets = std::make_unique<TargetSet>(load_targets(config.targets_path));
  }

  // One job per (sweep value, repetition); each job runs every algorithm on
  // the same instance.
  struct Job {
    std::size_t value_index;
    std::size_t repetition;
  };
  std::vector<Job> jobs;
  for (std::size_t v = 0; v < config.values.size(); ++v) {
    for (std::size_t r = 0; r < config.repetitions; ++r) jobs.push_back({v, r});
  }
  const std::size_t algos = config.algorithms.size();
  std::vector<ExperimentRow> cells(jobs.size() * algos);

  auto run_job = [&](std::size_t j) {
    const Job job = jobs[j];
    const std::size_t value = config.values[job.value_index];
    const std::uint64_t seed = config.base_seed + job.repetition;
    const InstanceShape shape = instance_shape(config, value);
    std::optional<Instance> inst;
    std::string instance_error;
    try {
      inst = build_instance(config, shape, seed, file_pool.get(), file_targets.get());
    } catch (const Error& e) {
      instance_error = "error:" + std::string(error_code_name(e.code())) + ": " + e.what();
    }
    for (std::size_t a = 0; a < algos; ++a) {
      ExperimentRow& row = cells[j * algos + a];
      row.sweep_value = value;
      row.algorithm = std::string(algorithm_name(config.algorithms[a]));
      row.repetition = job.repetition;
      row.seed = seed;
      if (!inst) {
        row.status = instance_error;
        continue;
      }
      SolveConfig solve_config;
      solve_config.budget = shape.budget;
      solve_config.seed = seed;
      solve_config.cis = config.cis;
      try {
        const SolveReport report = solve(config.algorithms[a], *inst->pool, *inst->targets, solve_config);
        row.cost = report.cost;
        row.wall_time_s = config.record_timing ? report.wall_time_s : 0.0;
      } catch (const Error& e) {
        row.status = "error:" + std::string(error_code_name(e.code())) + ": " + e.what();
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) run_job(j);
      });
    }
    for (auto& t : threads) t.join();
  }

  ExperimentResult result;
  // Reorder to (sweep value, algorithm, repetition).
  for (std::size_t v = 0; v < config.values.size(); ++v) {
    for (std::size_t a = 0; a < algos; ++a) {
      SummaryRow summary;
      summary.sweep_value = config.values[v];
      summary.algorithm = std::string(algorithm_name(config.algorithms[a]));
      double cost_sum = 0.0;
      double time_sum = 0.0;
      for (std::size_t r = 0; r < config.repetitions; ++r) {
        const ExperimentRow& row = cells[(v * config.repetitions + r) * algos + a];
        result.rows.push_back(row);
        if (row.status == "ok") {
          cost_sum += row.cost;
          time_sum += row.wall_time_s;
          ++summary.runs;
        } else {
          ++summary.errors;
        }
      }
      if (summary.runs > 0) {
        summary.mean_cost = cost_sum / static_cast<double>(summary.runs);
        summary.mean_wall_time_s = time_sum / static_cast<double>(summary.runs);
      }
      result.summary.push_back(std::move(summary));
    }
  }
  return result;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

}  // namespace

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "sweep_value,algorithm,repetition,cost,wall_time_s,seed,status\n";
  for (const auto& row : rows) {
    out << row.sweep_value << ',' << row.algorithm << ',' << row.repetition << ','
        << (row.status == "ok" ? format_double(row.cost) : std::string()) << ',' << format_seconds(row.wall_time_s)
        << ',' << row.seed << ',' << csv_escape(row.status) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "sweep_value,algorithm,mean_cost,mean_wall_time_s,runs,errors\n";
  for (const auto& row : summary) {
    out << row.sweep_value << ',' << row.algorithm << ',' << (row.runs > 0 ? format_double(row.mean_cost) : "")
        << ',' << format_seconds(row.mean_wall_time_s) << ',' << row.runs << ',' << row.errors << '\n';
  }
}

}  // namespace gtp
