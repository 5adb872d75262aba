#include "gtp/gtp.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gtp/datagen.hpp"
#include "gtp/error.hpp"
#include "gtp/experiment.hpp"
#include "gtp/io.hpp"
#include "gtp/oracle.hpp"
#include "gtp/solve.hpp"

struct gtp_pool {
  gtp::CandidatePool pool;
};

struct gtp_targets {
  gtp::TargetSet targets;
};

struct gtp_report {
  gtp::SolveReport report;
  gtp::CandidatePool pool;
  gtp::TargetSet targets;
};

namespace {

thread_local std::string last_error;

struct NullArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

gtp_status to_status(gtp::ErrorCode code) { return static_cast<gtp_status>(static_cast<int>(code)); }

template <typename F>
gtp_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return GTP_OK;
  } catch (const NullArgument& e) {
    last_error = e.what();
    return GTP_ERR_NULL_ARGUMENT;
  } catch (const gtp::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GTP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GTP_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw NullArgument(std::string(what) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

nlohmann::json assignment_json(const gtp::CandidatePool& pool, const gtp::Partitioning& part) {
  nlohmann::json out = nlohmann::json::object();
  if (part.size() != pool.size()) return nullptr;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (part.team[i] == gtp::kRemoved) {
      out[pool.id(i)] = "removed";
    } else {
      out[pool.id(i)] = part.team[i] + 1;
    }
  }
  return out;
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

#define GTP_CHECK_OUT(out)                      \
  do {                                          \
    if ((out) == nullptr) {                     \
      last_error = #out " must not be null";    \
      return GTP_ERR_NULL_ARGUMENT;             \
    }                                           \
  } while (0)

extern "C" {

const char* gtp_version(void) { return "1.0.0"; }

const char* gtp_status_name(gtp_status status) {
  switch (status) {
    case GTP_OK: return "ok";
    case GTP_ERR_NULL_ARGUMENT: return "null_argument";
    case GTP_ERR_INTERNAL: return "internal";
    default: break;
  }
  if (status >= GTP_ERR_DIMENSION && status <= GTP_ERR_UNKNOWN_ALGORITHM) {
    return gtp::error_code_name(static_cast<gtp::ErrorCode>(status)).data();
  }
  return "unknown";
}

const char* gtp_last_error(void) { return last_error.c_str(); }

void gtp_string_free(char* s) { std::free(s); }

gtp_status gtp_pool_load(const char* path, gtp_pool** out) {
  GTP_CHECK_OUT(out);
  *out = nullptr;
  return guarded([&] {
    require(path, "path");
    *out = new gtp_pool{gtp::load_pool(path)};
  });
}

gtp_status gtp_pool_from_values(const double* values, size_t n, size_t dim, const char* const* ids, gtp_pool** out) {
  GTP_CHECK_OUT(out);
  *out = nullptr;
  return guarded([&] {
    if (n > 0 && dim > 0) require(values, "values");
    std::vector<std::string> names(n);
    for (size_t i = 0; i < n; ++i) {
      if (ids != nullptr) {
        require(ids[i], "id");
        names[i] = ids[i];
      } else {
        names[i] = std::to_string(i);
      }
    }
    std::vector<double> data(values, values + n * dim);
    *out = new gtp_pool{gtp::CandidatePool(std::move(names), std::move(data), dim)};
  });
}

gtp_status gtp_pool_save(const gtp_pool* pool, const char* path) {
  return guarded([&] {
    require(pool, "pool");
    require(path, "path");
    gtp::save_pool(pool->pool, path);
  });
}

size_t gtp_pool_size(const gtp_pool* pool) { return pool == nullptr ? 0 : pool->pool.size(); }

size_t gtp_pool_dim(const gtp_pool* pool) { return pool == nullptr ? 0 : pool->pool.dim(); }

void gtp_pool_free(gtp_pool* pool) { delete pool; }

gtp_status gtp_targets_load(const char* path, gtp_targets** out) {
  GTP_CHECK_OUT(out);
  *out = nullptr;
  return guarded([&] {
    require(path, "path");
    *out = new gtp_targets{gtp::load_targets(path)};
  });
}

gtp_status gtp_targets_from_values(const double* values, size_t k, size_t dim, gtp_targets** out) {
  GTP_CHECK_OUT(out);
  *out = nullptr;
  return guarded([&] {
    if (k > 0 && dim > 0) require(values, "values");
    *out = new gtp_targets{gtp::TargetSet(std::vector<double>(values, values + k * dim), dim)};
  });
}

gtp_status gtp_targets_generate(const gtp_pool* pool, const char* method, size_t k, uint64_t seed,
                                gtp_targets** out) {
  GTP_CHECK_OUT(out);
  *out = nullptr;
  return guarded([&] {
    require(pool, "pool");
    require(method, "method");
    const gtp::TargetMethod m = gtp::parse_target_method(method);
    if (m == gtp::TargetMethod::kPlanted || m == gtp::TargetMethod::kFile) {
      gtp::fail(gtp::ErrorCode::kValidation, "target method must be mean, sample or sobol");
    }
    if (k == 0) gtp::fail(gtp::ErrorCode::kValidation, "k must be positive");
    *out = new gtp_targets{gtp::make_targets(m, pool->pool, k, seed, nullptr, nullptr)};
  });
}

gtp_status gtp_targets_save(const gtp_targets* targets, const char* path) {
  return guarded([&] {
    require(targets, "targets");
    require(path, "path");
    gtp::save_targets(targets->targets, path);
  });
}

size_t gtp_targets_size(const gtp_targets* targets) { return targets == nullptr ? 0 : targets->targets.size(); }

void gtp_targets_free(gtp_targets* targets) { delete targets; }

void gtp_solve_options_init(gtp_solve_options* options) {
  if (options == nullptr) return;
  options->budget = 0;
  options->seed = 0;
  options->cis_method = nullptr;
  options->threads = 1;
  options->refine = 0;
}

gtp_status gtp_solve(const gtp_pool* pool, const gtp_targets* targets, const char* algorithm,
                     const gtp_solve_options* options, gtp_report** out) {
  GTP_CHECK_OUT(out);
  *out = nullptr;
  return guarded([&] {
    require(pool, "pool");
    require(targets, "targets");
    require(algorithm, "algorithm");
    gtp_solve_options defaults;
    gtp_solve_options_init(&defaults);
    const gtp_solve_options& opts = options != nullptr ? *options : defaults;
    gtp::SolveConfig config;
    config.budget = opts.budget;
    config.seed = opts.seed;
    config.cis = gtp::parse_cis_method(opts.cis_method != nullptr ? opts.cis_method : "cvx");
    config.threads = opts.threads == 0 ? 1 : opts.threads;
    config.refine = opts.refine != 0;
    const gtp::Algorithm algo = gtp::parse_algorithm(algorithm);
    gtp::SolveReport report = gtp::solve(algo, pool->pool, targets->targets, config);
    *out = new gtp_report{std::move(report), pool->pool, targets->targets};
  });
}

double gtp_report_cost(const gtp_report* report) { return report == nullptr ? 0.0 : report->report.cost; }

double gtp_report_wall_time(const gtp_report* report) {
  return report == nullptr ? 0.0 : report->report.wall_time_s;
}

size_t gtp_report_removed_count(const gtp_report* report) {
  return report == nullptr ? 0 : report->report.removed_ids.size();
}

int gtp_report_team(const gtp_report* report, size_t i) {
  if (report == nullptr || i >= report->report.partitioning.size()) return gtp::kRemoved;
  return report->report.partitioning.team[i];
}

gtp_status gtp_report_to_json(const gtp_report* report, const char* config_json, int include_timing, char** out) {
  GTP_CHECK_OUT(out);
  *out = nullptr;
  return guarded([&] {
    require(report, "report");
    nlohmann::json config = nlohmann::json::object();
    if (config_json != nullptr) {
      try {
        config = nlohmann::json::parse(config_json);
      } catch (const nlohmann::json::exception& e) {
        gtp::fail(gtp::ErrorCode::kParse, std::string("config echo is not valid JSON: ") + e.what());
      }
    }
    gtp::SolveReport copy = report->report;
    if (include_timing == 0) copy.wall_time_s = 0.0;
    *out = copy_string(gtp::report_to_json(copy, report->pool, report->targets, config).dump(2) + "\n");
  });
}

void gtp_report_free(gtp_report* report) { delete report; }

gtp_status gtp_oracle_json(const gtp_pool* pool, const gtp_targets* targets, size_t budget, char** out) {
  GTP_CHECK_OUT(out);
  *out = nullptr;
  return guarded([&] {
    require(pool, "pool");
    require(targets, "targets");
    gtp::check_targets(pool->pool, targets->targets, targets->targets.size());
    if (budget > pool->pool.size()) gtp::fail(gtp::ErrorCode::kBudget, "budget exceeds the pool size");
    const gtp::OracleResult result = gtp::brute_gtp(pool->pool, targets->targets, budget);
    nlohmann::json doc;
    doc["schema_version"] = gtp::kReportSchemaVersion;
    doc["k"] = targets->targets.size();
    doc["n"] = pool->pool.size();
    doc["l"] = budget;
    doc["optimum"] = finite_or_null(result.optimum);
    doc["assignment"] = assignment_json(pool->pool, result.witness);
    doc["optimum_nonempty"] = finite_or_null(result.optimum_nonempty);
    doc["assignment_nonempty"] = assignment_json(pool->pool, result.witness_nonempty);
    doc["enumerated"] = result.enumerated;
    *out = copy_string(doc.dump(2) + "\n");
  });
}

gtp_status gtp_bench_json(const char* config_json, char** rows_csv, char** summary_csv) {
  GTP_CHECK_OUT(rows_csv);
  GTP_CHECK_OUT(summary_csv);
  *rows_csv = nullptr;
  *summary_csv = nullptr;
  return guarded([&] {
    require(config_json, "config_json");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      gtp::fail(gtp::ErrorCode::kParse, std::string("bench config is not valid JSON: ") + e.what());
    }
    const gtp::ExperimentResult result = gtp::run_experiment(gtp::experiment_from_json(doc));
    std::ostringstream rows;
    std::ostringstream summary;
    gtp::write_rows_csv(rows, result.rows);
    gtp::write_summary_csv(summary, result.summary);
    char* r = copy_string(rows.str());
    try {
      *summary_csv = copy_string(summary.str());
    } catch (...) {
      std::free(r);
      throw;
    }
    *rows_csv = r;
  });
}

gtp_status gtp_synth_save(size_t k, size_t m, size_t noise, size_t dim, double sigma, uint64_t seed,
                          const char* pool_path, const char* targets_path, const char* labels_path) {
  return guarded([&] {
    require(pool_path, "pool_path");
    require(targets_path, "targets_path");
    const gtp::SynthInstance inst = gtp::gen_synthetic({k, m, noise, dim, sigma, seed});
    gtp::save_pool(inst.pool, pool_path);
    gtp::save_targets(inst.targets, targets_path);
    if (labels_path != nullptr) gtp::save_labels(inst.pool, inst.label, labels_path);
  });
}

}  // extern "C"
