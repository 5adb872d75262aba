#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gtp/error.hpp"
#include "gtp/oracle.hpp"
#include "test_util.hpp"

using namespace gtp;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kValidation;
}

double recompute_cis(const CandidatePool& pool, const OracleResult& r, ConstRow target) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (r.witness.team[i] != kRemoved) kept.push_back(i);
  }
  return squared_l2(mean_of(pool, kept), target);
}

}  // namespace

TEST_CASE("exhaustive CIS") {
  const auto pool = testutil::line_pool({1, 2, 3, 9});
  const Vector two{2.0};
  const OracleResult r = brute_cis(pool, two, 1);
  CHECK(r.optimum == 0.0);
  CHECK(r.witness.removed() == std::vector<std::size_t>{3});
  CHECK(r.enumerated == 4);

  const OracleResult none = brute_cis(pool, two, 0);
  CHECK(none.optimum == squared_l2(Vector{3.75}, two));
  CHECK(none.witness.removed().empty());

  const auto flat = testutil::line_pool({2, 2, 2, 2, 2});
  for (std::size_t l = 0; l < 5; ++l) CHECK(brute_cis(flat, two, l).optimum == 0.0);
}

TEST_CASE("CIS size guard") {
  Rng rng(71);
  const auto pool = testutil::random_pool(rng, 30, 1);
  CHECK(code_of([&] { brute_cis(pool, Vector{0.5}, 15); }) == ErrorCode::kSizeGuard);
  CHECK_NOTHROW(brute_cis(pool, Vector{0.5}, 3));
}

TEST_CASE("exhaustive partitioning") {
  const auto pool = testutil::triple_pool();
  const auto targets = testutil::triple_targets();
  const OracleResult r = brute_cp(pool, targets);
  CHECK(r.optimum == 1.0);
  CHECK(r.witness.team == std::vector<int>{0, 1, 1});
  CHECK(r.enumerated == 8);

  Rng rng(72);
  const auto any = testutil::random_pool(rng, 6, 2);
  const Vector t{0.3, 0.7};
  const OracleResult one = brute_cp(any, TargetSet::from_rows({t}));
  CHECK(one.optimum == squared_l2(mean_of(any, std::vector<std::size_t>{0, 1, 2, 3, 4, 5}), t));

  const auto rows = testutil::uniform_rows(rng, 5, 2);
  CHECK(brute_cp(CandidatePool::from_rows(rows), TargetSet::from_rows(rows)).optimum == doctest::Approx(0.0));

  const auto big = testutil::random_pool(rng, 24, 1);
  CHECK(code_of([&] { brute_cp(big, TargetSet::from_rows({{0}, {1}})); }) == ErrorCode::kSizeGuard);
}

TEST_CASE("removal plus partitioning") {
  Rng rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    const auto pool = testutil::random_pool(rng, n, 2);
    const auto targets = testutil::random_targets(rng, 2, 2);
    const OracleResult a = brute_gtp(pool, targets, 0);
    const OracleResult b = brute_cp(pool, targets);
    CHECK(a.optimum == b.optimum);
    CHECK(a.optimum_nonempty == b.optimum_nonempty);
    CHECK(a.witness == b.witness);
  }

  // Four points around the targets and one far away: removing it wins.
  const auto pool = CandidatePool::from_rows({{0, 0}, {0.2, 0}, {1, 1}, {1.2, 1}, {30, -20}});
  const auto targets = TargetSet::from_rows({{0.1, 0}, {1.1, 1}});
  const OracleResult r = brute_gtp(pool, targets, 1);
  CHECK(r.witness.removed() == std::vector<std::size_t>{4});
  CHECK(r.optimum == doctest::Approx(0.0));
}

TEST_CASE("witnesses recompute to their optimum exactly") {
  Rng rng(74);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng.below(5);
    const std::size_t l = rng.below(3);
    const auto pool = testutil::random_pool(rng, n, 2);
    const auto targets = testutil::random_targets(rng, 2, 2);
    const OracleResult r = brute_gtp(pool, targets, l);
    CHECK(partition_cost(pool, r.witness, targets) == r.optimum);
    CHECK(r.witness.removed_count() == l);
    if (r.witness_nonempty.size() == n) {
      CHECK(partition_cost(pool, r.witness_nonempty, targets) == r.optimum_nonempty);
    }
    CHECK(r.optimum <= r.optimum_nonempty);

    Vector t(2);
    for (auto& v : t) v = rng.uniform();
    const OracleResult c = brute_cis(pool, t, l);
    CHECK(recompute_cis(pool, c, t) == c.optimum);
  }
}

TEST_CASE("subset-sum reduction") {
  const CisInstance yes = subset_sum_to_cis({3, 5, 8}, 2, 8);
  CHECK(yes.remove == 1);
  CHECK(yes.target == Vector{4.0});
  const OracleResult r = brute_cis(yes.pool, yes.target, yes.remove);
  CHECK(r.optimum == 0.0);
  CHECK(r.witness.removed() == std::vector<std::size_t>{2});

  const CisInstance no = subset_sum_to_cis({2, 4}, 1, 5);
  CHECK(brute_cis(no.pool, no.target, no.remove).optimum > 0.0);

  const CisInstance whole = subset_sum_to_cis({1, 4, 6, 9}, 4, 20);
  CHECK(whole.remove == 0);
  CHECK(brute_cis(whole.pool, whole.target, whole.remove).optimum == 0.0);

  CHECK(code_of([] { subset_sum_to_cis({1, 2}, 0, 0); }) == ErrorCode::kValidation);
}

TEST_CASE("binomial saturates") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(12, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(200, 100) == std::numeric_limits<std::uint64_t>::max());
}
