#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gtp/baselines.hpp"
#include "gtp/error.hpp"
#include "gtp/guided_split.hpp"
#include "gtp/solve.hpp"
#include "test_util.hpp"

using namespace gtp;

namespace {

// k blobs of `per` identical points at the given centers.
CandidatePool blobs(const std::vector<Vector>& centers, std::size_t per, std::vector<int>& labels) {
  std::vector<Vector> rows;
  labels.clear();
  for (std::size_t i = 0; i < per; ++i) {
    for (std::size_t c = 0; c < centers.size(); ++c) {
      rows.push_back(centers[c]);
      labels.push_back(static_cast<int>(c));
    }
  }
  return CandidatePool::from_rows(rows);
}

}  // namespace

TEST_CASE("Hungarian matching") {
  const auto targets = TargetSet::from_rows({{0.0}, {10.0}});
  const Matching same = hungarian_match({{0.0}, {10.0}}, targets);
  CHECK(same.perm == std::vector<std::size_t>{0, 1});
  CHECK(same.total == 0.0);
  const Matching swapped = hungarian_match({{10.0}, {0.0}}, targets);
  CHECK(swapped.perm == std::vector<std::size_t>{1, 0});
  CHECK(swapped.total == 0.0);
  const Matching abstract = hungarian_solve({1, 2, 2, 1}, 2);
  CHECK(abstract.perm == std::vector<std::size_t>{0, 1});
  CHECK(abstract.total == 2.0);
  CHECK_THROWS_AS(hungarian_match({{0.0}}, targets), Error);
}

TEST_CASE("Hungarian matching against permutation enumeration") {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng.below(7);
    std::vector<double> cost(k * k);
    for (auto& c : cost) c = rng.uniform(0, 5);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double total = 0.0;
      for (std::size_t i = 0; i < k; ++i) total += cost[i * k + perm[i]];
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(hungarian_solve(cost, k).total == best);
  }
}

TEST_CASE("random assignment") {
  Rng rng(52);
  const auto pool = testutil::random_pool(rng, 50, 2);
  CHECK(random_assignment(pool, 3, 7) == random_assignment(pool, 3, 7));
  CHECK(random_assignment(pool, 1, 7).team == std::vector<int>(50, 0));

  const auto big = testutil::random_pool(rng, 1000, 1);
  int balanced = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sizes = random_assignment(big, 4, seed).team_sizes();
    if (std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s >= 200 && s <= 300; })) ++balanced;
  }
  CHECK(balanced >= 95);
}

TEST_CASE("k-means basics") {
  std::vector<int> labels;
  const std::vector<Vector> centers{{0, 0}, {10, 0}, {0, 10}};
  const auto pool = blobs(centers, 5, labels);
  const KMeansResult seeded = kmeans_target_seeded(pool, TargetSet::from_rows(centers));
  CHECK(seeded.partitioning.team == labels);

  Rng rng(53);
  const auto any = testutil::random_pool(rng, 20, 3);
  const KMeansResult one = kmeans_plain(any, 1, 3);
  CHECK(one.partitioning.team == std::vector<int>(20, 0));
  const Vector m = mean_of(any, all_members(any));
  for (std::size_t j = 0; j < 3; ++j) CHECK(one.centers[0][j] == doctest::Approx(m[j]).epsilon(1e-12));
}

TEST_CASE("Lloyd objective never rises") {
  Rng rng(54);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng.below(5);
    const auto pool = testutil::random_pool(rng, k + 5 + rng.below(40), 2);
    const std::size_t outliers = trial % 2 == 0 ? 0 : rng.below(5);
    const KMeansResult r = outliers == 0 ? kmeans_plain(pool, k, trial) : kmeans_minus_minus(pool, k, outliers, trial);
    for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
      CHECK(r.objective_history[i] <= r.objective_history[i - 1] * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("k-means-- without outliers is plain k-means") {
  Rng rng(55);
  const auto pool = testutil::random_pool(rng, 40, 2);
  const KMeansResult a = kmeans_minus_minus(pool, 3, 0, 9);
  const KMeansResult b = kmeans_plain(pool, 3, 9);
  CHECK(a.partitioning == b.partitioning);
  CHECK(a.centers == b.centers);
}

TEST_CASE("k-means-- finds the noise") {
  // Three heavy zero-spread blobs; the two noise points are farther from every
  // blob than any blob point but too light to attract a seed.
  std::vector<Vector> rows;
  const std::vector<Vector> centers{{0, 0}, {10, 0}, {0, 10}};
  for (std::size_t i = 0; i < 20; ++i) {
    for (const auto& c : centers) rows.push_back(c);
  }
  rows.push_back({5, 5});
  rows.push_back({-4, -4});
  const auto pool = CandidatePool::from_rows(rows);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const KMeansResult r = kmeans_minus_minus(pool, 3, 2, seed);
    CHECK(r.partitioning.removed() == std::vector<std::size_t>{60, 61});
  }
}

TEST_CASE("nearest-neighbour outliers") {
  const auto pool = CandidatePool::from_rows({{0, 0}, {0.1, 0}, {0, 0.1}, {100, 0}, {0.1, 0.1}});
  CHECK(nearest_neighbor_outliers(pool, 1) == std::vector<std::size_t>{3});
  const auto twice = CandidatePool::from_rows({{1, 1}, {3, 3}, {1, 1}, {3, 3}, {7, 7}, {7, 7}});
  CHECK(nearest_neighbor_outliers(twice, 2) == std::vector<std::size_t>{0, 1});
  Rng rng(56);
  const auto any = testutil::random_pool(rng, 30, 2);
  CHECK(knn_then_kmeans(any, 3, 0, 4) == kmeans_plain(any, 3, 4).partitioning);
}

TEST_CASE("best-team-first sizes") {
  CHECK(btf_team_sizes(10, 1, 0) == std::vector<std::size_t>{10});
  CHECK(btf_team_sizes(10, 2, 1) == std::vector<std::size_t>{5, 4});
  CHECK(btf_team_sizes(11, 3, 1) == std::vector<std::size_t>{4, 3, 3});
  CHECK_THROWS_AS(btf_team_sizes(3, 3, 1), Error);
  Rng rng(57);
  const auto pool = testutil::random_pool(rng, 9, 2);
  const Partitioning one = best_team_first(pool, testutil::random_targets(rng, 1, 2), 0, CisMethod::kCvx);
  CHECK(one.team == std::vector<int>(9, 0));
}

TEST_CASE("best-team-first favours its first team") {
  int first_better = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed + 500);
    const std::size_t k = 2 + rng.below(2);
    const std::size_t budget = rng.below(3);
    const std::size_t n = k + budget + 2 + rng.below(10);
    const auto pool = testutil::random_pool(rng, n, 2);
    const auto targets = testutil::random_targets(rng, k, 2);
    const TeamStats btf = team_stats(pool, best_team_first(pool, targets, budget, CisMethod::kCvx), targets);
    const SolveReport gs = guided_split(pool, targets, budget);
    if (btf.costs[0] <= gs.per_team_cost[0]) ++first_better;
  }
  MESSAGE("best-team-first first team no worse on " << first_better << "/100");
  CHECK(first_better >= 90);
}

TEST_CASE("relabelling") {
  Rng rng(58);
  std::vector<int> labels;
  const std::vector<Vector> centers{{0, 0}, {10, 0}};
  const auto pool = blobs(centers, 3, labels);
  const auto targets = TargetSet::from_rows(centers);
  const Partitioning ordered(labels, 2);
  CHECK(relabel_to_targets(pool, ordered, targets) == ordered);
  CHECK(post_pipeline(pool, ordered, targets, 0) == ordered);

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng.below(4);
    const auto any = testutil::random_pool(rng, 30, 2);
    const auto t = testutil::random_targets(rng, k, 2);
    const Partitioning part = random_assignment(any, k, trial);
    CHECK(partition_cost(any, relabel_to_targets(any, part, t), t) <= partition_cost(any, part, t));
  }
}

TEST_CASE("every baseline emits a valid partitioning") {
  Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 1 + rng.below(4);
    const std::size_t budget = rng.below(6);
    const auto pool = testutil::random_pool(rng, k + budget + 5 + rng.below(30), 3);
    const auto targets = testutil::random_targets(rng, k, 3);
    for (Algorithm algo : all_algorithms()) {
      if (algo == Algorithm::kMaxBenefit) continue;
      SolveConfig config;
      config.budget = budget;
      config.seed = static_cast<std::uint64_t>(trial);
      const SolveReport a = solve(algo, pool, targets, config);
      const SolveReport b = solve(algo, pool, targets, config);
      CHECK(a.partitioning.removed_count() == budget);
      CHECK(a.partitioning.k == k);
      CHECK(a.partitioning == b.partitioning);
      validate(a.partitioning, pool);
    }
  }
}
