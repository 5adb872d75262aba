// Command-line front end. Talks to the library only through gtp.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gtp/gtp.h"
#include "json.hpp"

namespace {

// Raised after a failed library call; carries the status for the exit code.
struct CliFailure {
  gtp_status status;
  std::string message;
};

void check(gtp_status status) {
  if (status != GTP_OK) throw CliFailure{status, gtp_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw CliFailure{GTP_ERR_VALIDATION, message}; }

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
};

using Pool = Handle<gtp_pool, gtp_pool_free>;
using Targets = Handle<gtp_targets, gtp_targets_free>;
using Report = Handle<gtp_report, gtp_report_free>;

std::string take_string(char* s) {
  std::string out = s == nullptr ? std::string() : std::string(s);
  gtp_string_free(s);
  return out;
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliFailure{GTP_ERR_IO, "cannot open '" + path + "' for writing"};
  out << contents;
  if (!out) throw CliFailure{GTP_ERR_IO, "failed writing '" + path + "'"};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct InstanceFlags {
  std::string pool;
  std::string targets;
  std::string target_method = "file";
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& flags) {
  cmd->add_option("--pool", flags.pool, "candidate CSV (id,f1,...,fd)")->required();
  cmd->add_option("--targets", flags.targets, "target CSV (t_id,f1,...,fd)");
  cmd->add_option("--target-method", flags.target_method, "file, mean, sample or sobol")
      ->check(CLI::IsMember({"file", "mean", "sample", "sobol"}));
  cmd->add_option("--k", flags.k, "number of teams when generating targets");
  cmd->add_option("--seed", flags.seed, "random seed");
}

void load_instance(const InstanceFlags& flags, Pool& pool, Targets& targets) {
  check(gtp_pool_load(flags.pool.c_str(), &pool.ptr));
  if (flags.target_method == "file") {
    if (flags.targets.empty()) usage_error("--targets is required unless --target-method generates them");
    check(gtp_targets_load(flags.targets.c_str(), &targets.ptr));
    if (flags.k != 0 && flags.k != gtp_targets_size(targets.ptr)) {
      usage_error("--k " + std::to_string(flags.k) + " does not match the " +
                  std::to_string(gtp_targets_size(targets.ptr)) + " targets in the file");
    }
  } else {
    if (flags.k == 0) usage_error("--k is required with --target-method " + flags.target_method);
    check(gtp_targets_generate(pool.ptr, flags.target_method.c_str(), flags.k, flags.seed, &targets.ptr));
  }
}

nlohmann::json instance_echo(const InstanceFlags& flags) {
  return {{"pool", flags.pool},
          {"targets", flags.targets},
          {"target_method", flags.target_method},
          {"k", flags.k},
          {"seed", flags.seed}};
}

void write_error(gtp_status status, const std::string& message) {
  nlohmann::json doc;
  doc["error"] = {{"code", gtp_status_name(status)}, {"status", static_cast<int>(status)}, {"message", message}};
  std::cerr << doc.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guided team partitioning: split a candidate pool into teams whose means approach given targets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gtp_version()));

  // solve
  InstanceFlags solve_instance;
  std::string solve_algo = "guided_split";
  std::string solve_cis = "cvx";
  std::size_t solve_budget = 0;
  std::string solve_out;
  bool solve_no_timing = false;
  bool solve_refine = false;
  unsigned solve_threads = 1;
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance with one algorithm");
  add_instance_flags(solve_cmd, solve_instance);
  solve_cmd->add_option("--algo", solve_algo, "algorithm name");
  solve_cmd->add_option("--l", solve_budget, "number of candidates to remove");
  solve_cmd->add_option("--cis-method", solve_cis, "cvx or greedy")->check(CLI::IsMember({"cvx", "greedy"}));
  solve_cmd->add_option("--threads", solve_threads, "benefit-matrix workers");
  solve_cmd->add_flag("--refine", solve_refine, "reassign kept candidates after removal");
  solve_cmd->add_option("--out", solve_out, "report JSON path (default stdout)");
  solve_cmd->add_flag("--no-timing", solve_no_timing, "write wall_time_s as 0");

  // bench
  std::string bench_config;
  std::string bench_algos = "all";
  std::string bench_sweep = "l";
  std::string bench_values;
  std::size_t bench_n = 500, bench_k = 5, bench_l = 50, bench_d = 10, bench_reps = 25;
  double bench_sigma = 0.2;
  std::string bench_target_method = "planted";
  std::string bench_pool, bench_targets, bench_cis = "cvx", bench_out, bench_summary;
  std::uint64_t bench_seed = 0;
  unsigned bench_workers = 1;
  bool bench_no_timing = false;
  auto* bench_cmd = app.add_subcommand("bench", "run a parameter sweep");
  bench_cmd->add_option("--config", bench_config, "JSON sweep description; replaces the sweep flags");
  bench_cmd->add_option("--algo", bench_algos, "comma-separated algorithms or 'all'");
  bench_cmd->add_option("--sweep", bench_sweep, "swept parameter: l, k or n")->check(CLI::IsMember({"l", "k", "n"}));
  bench_cmd->add_option("--values", bench_values, "comma-separated sweep values");
  bench_cmd->add_option("--n", bench_n, "pool size");
  bench_cmd->add_option("--k", bench_k, "number of teams");
  bench_cmd->add_option("--l", bench_l, "number of removed candidates");
  bench_cmd->add_option("--d", bench_d, "feature dimension");
  bench_cmd->add_option("--sigma", bench_sigma, "planted team spread");
  bench_cmd->add_option("--target-method", bench_target_method, "planted, mean, sample, sobol or file");
  bench_cmd->add_option("--pool", bench_pool, "candidate CSV instead of synthetic instances");
  bench_cmd->add_option("--targets", bench_targets, "target CSV for --target-method file");
  bench_cmd->add_option("--reps", bench_reps, "repetitions per cell");
  bench_cmd->add_option("--seed", bench_seed, "base seed; repetition r uses seed + r");
  bench_cmd->add_option("--cis-method", bench_cis, "cvx or greedy")->check(CLI::IsMember({"cvx", "greedy"}));
  bench_cmd->add_option("--workers", bench_workers, "concurrent sweep cells");
  bench_cmd->add_option("--out", bench_out, "raw rows CSV (default stdout)");
  bench_cmd->add_option("--summary", bench_summary, "per-cell mean CSV");
  bench_cmd->add_flag("--no-timing", bench_no_timing, "write wall times as 0");

  // synth
  std::size_t synth_k = 4, synth_m = 50, synth_l = 0, synth_d = 2;
  double synth_sigma = 0.1;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "write a planted synthetic instance");
  synth_cmd->add_option("--k", synth_k, "planted teams");
  synth_cmd->add_option("--m", synth_m, "points per planted team");
  synth_cmd->add_option("--l", synth_l, "uniform noise points");
  synth_cmd->add_option("--d", synth_d, "feature dimension");
  synth_cmd->add_option("--sigma", synth_sigma, "planted team spread");
  synth_cmd->add_option("--seed", synth_seed, "random seed");
  synth_cmd->add_option("--out", synth_out, "output prefix: <out>_pool.csv, <out>_targets.csv, <out>_labels.csv")
      ->required();

  // oracle
  InstanceFlags oracle_instance;
  std::size_t oracle_budget = 0;
  std::string oracle_out;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact solve of a small instance");
  add_instance_flags(oracle_cmd, oracle_instance);
  oracle_cmd->add_option("--l", oracle_budget, "number of candidates to remove");
  oracle_cmd->add_option("--out", oracle_out, "result JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    write_error(GTP_ERR_VALIDATION, e.what());
    return static_cast<int>(GTP_ERR_VALIDATION);
  }

  try {
    if (*solve_cmd) {
      Pool pool;
      Targets targets;
      load_instance(solve_instance, pool, targets);
      gtp_solve_options opts;
      gtp_solve_options_init(&opts);
      opts.budget = solve_budget;
      opts.seed = solve_instance.seed;
      opts.cis_method = solve_cis.c_str();
      opts.threads = solve_threads;
      opts.refine = solve_refine ? 1 : 0;
      Report report;
      check(gtp_solve(pool.ptr, targets.ptr, solve_algo.c_str(), &opts, &report.ptr));
      nlohmann::json echo = instance_echo(solve_instance);
      echo["algo"] = solve_algo;
      echo["l"] = solve_budget;
      echo["cis_method"] = solve_cis;
      echo["refine"] = solve_refine;
      char* json = nullptr;
      check(gtp_report_to_json(report.ptr, echo.dump().c_str(), solve_no_timing ? 0 : 1, &json));
      emit(solve_out, take_string(json));
    } else if (*bench_cmd) {
      nlohmann::json config;
      if (!bench_config.empty()) {
        std::ifstream in(bench_config);
        if (!in) throw CliFailure{GTP_ERR_IO, "cannot open '" + bench_config + "' for reading"};
        try {
          config = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
          throw CliFailure{GTP_ERR_PARSE, bench_config + ": " + e.what()};
        }
      } else {
        std::vector<std::string> algos = split_list(bench_algos);
        if (algos.size() == 1 && algos[0] == "all") {
          algos = {"guided_split", "random", "kmeans", "kmeans_t", "kmeans_mm", "knn_kmeans", "btf_cvx", "btf_greedy"};
        }
        std::vector<std::size_t> values;
        for (const auto& v : split_list(bench_values)) {
          try {
            std::size_t used = 0;
            values.push_back(std::stoul(v, &used));
            if (used != v.size()) throw std::invalid_argument(v);
          } catch (const std::exception&) {
            usage_error("--values entry '" + v + "' is not a nonnegative integer");
          }
        }
        config = {{"algorithms", algos},   {"sweep", bench_sweep},    {"values", values},
                  {"n", bench_n},          {"k", bench_k},            {"l", bench_l},
                  {"d", bench_d},          {"sigma", bench_sigma},    {"target_method", bench_target_method},
                  {"pool", bench_pool},    {"targets", bench_targets}, {"reps", bench_reps},
                  {"seed", bench_seed},    {"cis_method", bench_cis}, {"workers", bench_workers}};
      }
      if (bench_no_timing) config["timing"] = false;
      char* rows = nullptr;
      char* summary = nullptr;
      check(gtp_bench_json(config.dump().c_str(), &rows, &summary));
      const std::string rows_text = take_string(rows);
      const std::string summary_text = take_string(summary);
      emit(bench_out, rows_text);
      if (!bench_summary.empty()) emit(bench_summary, summary_text);
    } else if (*synth_cmd) {
      const std::string pool_path = synth_out + "_pool.csv";
      const std::string targets_path = synth_out + "_targets.csv";
      const std::string labels_path = synth_out + "_labels.csv";
      check(gtp_synth_save(synth_k, synth_m, synth_l, synth_d, synth_sigma, synth_seed, pool_path.c_str(),
                           targets_path.c_str(), labels_path.c_str()));
    } else if (*oracle_cmd) {
      Pool pool;
      Targets targets;
      load_instance(oracle_instance, pool, targets);
      char* json = nullptr;
      check(gtp_oracle_json(pool.ptr, targets.ptr, oracle_budget, &json));
      emit(oracle_out, take_string(json));
    }
  } catch (const CliFailure& f) {
    write_error(f.status, f.message);
    return static_cast<int>(f.status);
  }
  return 0;
}
