#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "gtp/error.hpp"
#include "gtp/experiment.hpp"
#include "gtp/io.hpp"
#include "test_util.hpp"

using namespace gtp;

namespace {

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::kValidation, "");
}

CandidatePool parse_pool(const std::string& text) {
  std::istringstream in(text);
  return read_pool_csv(in, "pool.csv");
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gtp_harness_" + name);
}

}  // namespace

TEST_CASE("pool CSV parsing") {
  const auto pool = parse_pool("id,f1,f2\nx,1,2\ny,3.5,-4e-3\n");
  CHECK(pool.size() == 2);
  CHECK(pool.dim() == 2);
  CHECK(pool.id(1) == "y");
  CHECK(pool.row(1)[1] == -4e-3);

  const Error ragged = error_of([] { parse_pool("id,f1,f2\nx,1,2\ny,1,2,3\n"); });
  CHECK(ragged.code() == ErrorCode::kParse);
  CHECK(std::string(ragged.what()).find("pool.csv:3") != std::string::npos);

  const Error text = error_of([] { parse_pool("id,f1\nx,abc\n"); });
  CHECK(text.code() == ErrorCode::kParse);
  CHECK(std::string(text.what()).find(":2") != std::string::npos);

  const Error dup = error_of([] { parse_pool("id,f1\nx,1\ny,2\nx,3\n"); });
  CHECK(dup.code() == ErrorCode::kParse);
  CHECK(std::string(dup.what()).find(":4") != std::string::npos);

  CHECK(error_of([] { parse_pool(""); }).code() == ErrorCode::kParse);
  CHECK(error_of([] { parse_pool("name,f1\nx,1\n"); }).code() == ErrorCode::kParse);
  CHECK(error_of([] { parse_pool("id,f1\nx,inf\n"); }).code() == ErrorCode::kParse);
}

TEST_CASE("targets CSV") {
  std::istringstream empty("t_id,f1,f2\n");
  CHECK(error_of([&] { read_targets_csv(empty); }).code() == ErrorCode::kParse);
  std::istringstream ok("t_id,f1\nt1,0.5\nt2,0.25\n");
  const TargetSet t = read_targets_csv(ok);
  CHECK(t.size() == 2);
  CHECK(t[1][0] == 0.25);
}

TEST_CASE("files round-trip exactly") {
  Rng rng(81);
  std::vector<Vector> rows = testutil::uniform_rows(rng, 20, 3, -1e6, 1e6);
  rows[0][0] = 1e-300;
  rows[1][1] = 0.1;
  const auto pool = CandidatePool::from_rows(rows);
  const auto path = scratch("pool.csv").string();
  save_pool(pool, path);
  const auto back = load_pool(path);
  CHECK(back.ids() == pool.ids());
  CHECK(back.values() == pool.values());

  const auto targets = testutil::random_targets(rng, 4, 3);
  const auto tpath = scratch("targets.csv").string();
  save_targets(targets, tpath);
  CHECK(load_targets(tpath).values() == targets.values());
  std::filesystem::remove(path);
  std::filesystem::remove(tpath);

  CHECK(error_of([] { load_pool("/nonexistent/dir/pool.csv"); }).code() == ErrorCode::kIo);
}

TEST_CASE("report round-trip") {
  Rng rng(82);
  const auto pool = testutil::random_pool(rng, 30, 3);
  const auto targets = testutil::random_targets(rng, 3, 3);
  SolveConfig config;
  config.budget = 4;
  const SolveReport report = solve(Algorithm::kGuidedSplit, pool, targets, config);
  const nlohmann::json doc = report_to_json(report, pool, targets, {{"l", 4}});
  CHECK(doc["schema_version"] == "1");
  CHECK(doc["config"]["l"] == 4);
  CHECK(doc["assignment"].size() == 30);
  const auto text = doc.dump(2);
  const SolveReport back = report_from_json(nlohmann::json::parse(text), pool);
  CHECK(back.cost == report.cost);
  CHECK(back.per_team_cost == report.per_team_cost);
  CHECK(back.partitioning == report.partitioning);
  CHECK(back.removed_ids == report.removed_ids);
  CHECK(back.centroids == report.centroids);
}

TEST_CASE("solve rejects bad inputs") {
  const auto pool = CandidatePool::from_rows({{1, 2}, {3, 4}, {5, 6}});
  CHECK(error_of([&] { solve(Algorithm::kGuidedSplit, pool, TargetSet::from_rows({{1, 2, 3}}), {}); }).code() ==
        ErrorCode::kDimension);
  SolveConfig config;
  config.budget = 1;
  CHECK(error_of([&] { solve(Algorithm::kMaxBenefit, pool, TargetSet::from_rows({{1, 2}}), config); }).code() ==
        ErrorCode::kBudget);
  const Error unknown = error_of([] { parse_algorithm("kmedoids"); });
  CHECK(unknown.code() == ErrorCode::kUnknownAlgorithm);
  for (Algorithm a : all_algorithms()) {
    CHECK(std::string(unknown.what()).find(std::string(algorithm_name(a))) != std::string::npos);
    CHECK(parse_algorithm(algorithm_name(a)) == a);
  }
}

TEST_CASE("single-cell experiment") {
  ExperimentConfig config;
  config.algorithms = {Algorithm::kGuidedSplit};
  config.values = {5};
  config.n = 60;
  config.k = 3;
  config.d = 3;
  config.repetitions = 1;
  const ExperimentResult r = run_experiment(config);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].status == "ok");
  CHECK(r.rows[0].sweep_value == 5);
  CHECK(r.summary.size() == 1);
  CHECK(r.summary[0].mean_cost == r.rows[0].cost);
}

TEST_CASE("experiments are reproducible and ordered") {
  ExperimentConfig config;
  config.algorithms = {Algorithm::kRandom, Algorithm::kGuidedSplit, Algorithm::kKMeansMinusMinus};
  config.sweep = SweepVariable::kSize;
  config.values = {40, 60};
  config.k = 3;
  config.budget = 4;
  config.d = 3;
  config.repetitions = 3;
  config.base_seed = 17;
  config.record_timing = false;
  const auto table = [&](unsigned workers) {
    config.workers = workers;
    std::ostringstream out;
    const ExperimentResult r = run_experiment(config);
    write_rows_csv(out, r.rows);
    write_summary_csv(out, r.summary);
    return out.str();
  };
  const std::string once = table(1);
  CHECK(once == table(1));
  CHECK(once == table(3));
  CHECK(once.rfind("sweep_value,algorithm,repetition,cost,wall_time_s,seed,status\n40,random,0,", 0) == 0);
}

TEST_CASE("solver errors are recorded per cell") {
  ExperimentConfig config;
  config.algorithms = {Algorithm::kMaxBenefit, Algorithm::kGuidedSplit};
  config.values = {3};
  config.n = 30;
  config.k = 2;
  config.d = 2;
  config.repetitions = 2;
  const ExperimentResult r = run_experiment(config);
  CHECK(r.rows.size() == 4);
  CHECK(r.rows[0].status.rfind("error:budget", 0) == 0);
  CHECK(r.rows[2].status == "ok");
  CHECK(r.summary[0].errors == 2);
  CHECK(r.summary[1].runs == 2);
}

TEST_CASE("invalid experiment configurations") {
  ExperimentConfig config;
  config.algorithms = {Algorithm::kGuidedSplit};
  config.values = {10};
  config.repetitions = 0;
  CHECK(error_of([&] { validate(config); }).code() == ErrorCode::kValidation);
  config.repetitions = 1;
  config.sweep = SweepVariable::kTeams;
  config.values = {0};
  CHECK(error_of([&] { validate(config); }).code() == ErrorCode::kValidation);
  config.values = {480};
  CHECK(error_of([&] { validate(config); }).code() == ErrorCode::kValidation);
  config.values = {4};
  config.target_method = TargetMethod::kFile;
  CHECK(error_of([&] { validate(config); }).code() == ErrorCode::kValidation);
}

TEST_CASE("config JSON round-trip") {
  ExperimentConfig config;
  config.algorithms = {Algorithm::kBtfGreedy, Algorithm::kKnnKMeans};
  config.sweep = SweepVariable::kTeams;
  config.values = {2, 4};
  config.target_method = TargetMethod::kSobol;
  config.cis = CisMethod::kGreedy;
  config.base_seed = 99;
  const ExperimentConfig back = experiment_from_json(experiment_to_json(config));
  CHECK(experiment_to_json(back) == experiment_to_json(config));
  CHECK(error_of([] { experiment_from_json({{"values", {1}}}); }).code() == ErrorCode::kParse);
}

TEST_CASE("guided_split beats the random baseline on a k sweep") {
  ExperimentConfig config;
  config.algorithms = all_algorithms();
  config.algorithms.erase(config.algorithms.begin() + 1);  // max_benefit cannot remove points
  config.sweep = SweepVariable::kTeams;
  config.values = {2, 4, 8};
  config.n = 120;
  config.budget = 10;
  config.d = 5;
  config.repetitions = 5;
  const ExperimentResult r = run_experiment(config);
  const std::size_t algos = config.algorithms.size();
  for (std::size_t v = 0; v < config.values.size(); ++v) {
    const SummaryRow& gs = r.summary[v * algos];
    const SummaryRow& random = r.summary[v * algos + 1];
    REQUIRE(gs.algorithm == "guided_split");
    REQUIRE(random.algorithm == "random");
    CHECK(gs.mean_cost <= random.mean_cost);
  }
}
