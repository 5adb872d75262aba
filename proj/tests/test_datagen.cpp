#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "gtp/datagen.hpp"
#include "gtp/error.hpp"
#include "test_util.hpp"

using namespace gtp;

namespace {

// Exact star discrepancy of a 2-D point set: the supremum over anchored boxes
// is attained with box corners at point coordinates or 1, counting points
// either strictly inside or inside-or-on the upper edges.
double star_discrepancy_2d(const std::vector<Vector>& pts) {
  std::vector<double> us{1.0}, vs{1.0};
  for (const auto& p : pts) {
    us.push_back(p[0]);
    vs.push_back(p[1]);
  }
  const double n = static_cast<double>(pts.size());
  double worst = 0.0;
  for (double u : us) {
    for (double v : vs) {
      std::size_t open = 0;
      std::size_t closed = 0;
      for (const auto& p : pts) {
        if (p[0] < u && p[1] < v) ++open;
        if (p[0] <= u && p[1] <= v) ++closed;
      }
      worst = std::max({worst, u * v - open / n, closed / n - u * v});
    }
  }
  return worst;
}

std::vector<Vector> rows_of(const TargetSet& t) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.emplace_back(t[i].begin(), t[i].end());
  return out;
}

}  // namespace

TEST_CASE("Sobol points match the reference construction") {
  CHECK(rows_of(targets_sobol(3, 1)) == std::vector<Vector>{{0.5}, {0.75}, {0.25}});

  SobolSequence five(5);
  CHECK(five.next() == Vector(5, 0.0));
  const std::vector<Vector> expected{{0.5, 0.5, 0.5, 0.5, 0.5},          {0.75, 0.25, 0.25, 0.25, 0.75},
                                     {0.25, 0.75, 0.75, 0.75, 0.25},     {0.375, 0.375, 0.625, 0.875, 0.375},
                                     {0.875, 0.875, 0.125, 0.375, 0.875}, {0.625, 0.125, 0.875, 0.625, 0.625},
                                     {0.125, 0.625, 0.375, 0.125, 0.125}, {0.1875, 0.3125, 0.9375, 0.4375, 0.5625}};
  for (const auto& e : expected) CHECK(five.next() == e);

  SobolSequence wide(64);
  wide.skip(5);
  const Vector p = wide.next();
  CHECK(Vector(p.begin() + 55, p.end()) == Vector{0.875, 0.375, 0.875, 0.375, 0.375, 0.625, 0.875, 0.375, 0.625});

  SobolSequence widest(1024);
  widest.skip(3);
  const Vector q = widest.next();
  CHECK(Vector(q.begin() + 1015, q.end()) == Vector{0.25, 0.25, 0.75, 0.25, 0.75, 0.25, 0.25, 0.75, 0.25});

  SobolSequence forty(40);
  forty.skip(777);
  const Vector r = forty.next();
  CHECK(Vector(r.begin() + 30, r.end()) == Vector{0.5419921875, 0.8994140625, 0.1123046875, 0.0029296875,
                                                  0.8056640625, 0.9462890625, 0.4619140625, 0.3505859375,
                                                  0.3427734375, 0.3583984375});
}

TEST_CASE("Sobol targets stay in the unit cube") {
  for (std::size_t d : {1, 2, 7, 64, 300}) {
    const TargetSet t = targets_sobol(50, d);
    for (double v : t.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  CHECK_THROWS_AS(targets_sobol(3, 0), Error);
  CHECK_THROWS_AS(targets_sobol(3, SobolSequence::max_dim() + 1), Error);
}

TEST_CASE("Sobol points are more even than uniform draws") {
  const double sobol = star_discrepancy_2d(rows_of(targets_sobol(256, 2)));
  std::vector<double> uniform;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(seed);
    uniform.push_back(star_discrepancy_2d(testutil::uniform_rows(rng, 256, 2)));
  }
  std::sort(uniform.begin(), uniform.end());
  MESSAGE("star discrepancy: sobol " << sobol << ", uniform median " << uniform[12]);
  CHECK(sobol < uniform[12]);
}

TEST_CASE("mean targets") {
  const auto pool = CandidatePool::from_rows({{0, 0}, {2, 2}});
  CHECK(rows_of(targets_mean(pool, 2)) == std::vector<Vector>{{1, 1}, {1, 1}});
  const TargetSet one = targets_mean(pool, 1);
  CHECK(rows_of(one) == std::vector<Vector>{{1, 1}});
  CHECK(partition_cost(pool, Partitioning({0, 0}, 1), one) == 0.0);
}

TEST_CASE("sampled targets") {
  Rng rng(61);
  const auto pool = testutil::random_pool(rng, 9, 3);
  std::set<Vector> rows;
  for (std::size_t i = 0; i < pool.size(); ++i) rows.insert(Vector(pool.row(i).begin(), pool.row(i).end()));
  const auto all = rows_of(targets_sample(pool, 9, 4));
  CHECK(std::set<Vector>(all.begin(), all.end()) == rows);
  const auto some = rows_of(targets_sample(pool, 4, 4));
  CHECK(some == rows_of(targets_sample(pool, 4, 4)));
  for (const auto& r : some) CHECK(rows.count(r) == 1);
  CHECK_THROWS_AS(targets_sample(pool, 10, 4), Error);
}

TEST_CASE("synthetic instances") {
  SynthConfig exact{3, 10, 5, 4, 0.0, 2};
  const SynthInstance inst = gen_synthetic(exact);
  CHECK(inst.pool.size() == 35);
  std::vector<std::size_t> counts(3, 0);
  std::size_t noise = 0;
  for (std::size_t i = 0; i < inst.pool.size(); ++i) {
    if (inst.label[i] == kNoise) {
      ++noise;
      continue;
    }
    ++counts[static_cast<std::size_t>(inst.label[i])];
    const auto t = inst.targets[static_cast<std::size_t>(inst.label[i])];
    CHECK(Vector(inst.pool.row(i).begin(), inst.pool.row(i).end()) == Vector(t.begin(), t.end()));
  }
  CHECK(noise == 5);
  CHECK(counts == std::vector<std::size_t>{10, 10, 10});
  const SynthInstance again = gen_synthetic(exact);
  CHECK(again.pool.values() == inst.pool.values());
  CHECK(again.label == inst.label);
}

TEST_CASE("planted team means concentrate around their targets") {
  const std::size_t k = 4, m = 50, d = 5;
  const double sigma = 0.1;
  std::size_t inside = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const SynthInstance inst = gen_synthetic({k, m, 10, d, sigma, seed});
    for (std::size_t t = 0; t < k; ++t) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < inst.pool.size(); ++i) {
        if (inst.label[i] == static_cast<int>(t)) members.push_back(i);
      }
      const Vector mu = mean_of(inst.pool, members);
      for (std::size_t j = 0; j < d; ++j) {
        ++total;
        if (std::abs(mu[j] - inst.targets[t][j]) <= 4.0 * sigma / std::sqrt(static_cast<double>(m))) ++inside;
      }
    }
  }
  CHECK(static_cast<double>(inside) >= 0.99 * static_cast<double>(total));
}
