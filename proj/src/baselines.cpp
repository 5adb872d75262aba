#include "gtp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gtp/error.hpp"
#include "gtp/rng.hpp"

namespace gtp {

Matching hungarian_solve(const std::vector<double>& cost, std::size_t k) {
  if (k == 0 || cost.size() != k * k) fail(ErrorCode::kValidation, "assignment cost matrix must be square and nonempty");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is a virtual column holding the row being added.
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<std::size_t> match_col(k + 1, 0), way(k + 1, 0);
  for (std::size_t row = 1; row <= k; ++row) {
    match_col[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(k + 1, kInf);
    std::vector<char> used(k + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t r = match_col[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= k; ++c) {
        if (used[c]) continue;
        const double reduced = cost[(r - 1) * k + (c - 1)] - u[r] - v[c];
        if (reduced < minv[c]) {
          minv[c] = reduced;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= k; ++c) {
        if (used[c]) {
          u[match_col[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (match_col[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match_col[col0] = match_col[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  Matching out;
  out.perm.resize(k);
  for (std::size_t c = 1; c <= k; ++c) out.perm[match_col[c] - 1] = c - 1;
  for (std::size_t i = 0; i < k; ++i) out.total += cost[i * k + out.perm[i]];
  return out;
}

Matching hungarian_match(const std::vector<Vector>& centroids, const TargetSet& targets) {
  const std::size_t k = centroids.size();
  if (k != targets.size()) {
    fail(ErrorCode::kValidation, "cannot match " + std::to_string(k) + " centroids to " +
                                     std::to_string(targets.size()) + " targets");
  }
  std::vector<double> cost(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t t = 0; t < k; ++t) cost[i * k + t] = squared_l2(centroids[i], targets[t]);
  }
  return hungarian_solve(cost, k);
}

Partitioning random_assignment(const CandidatePool& pool, std::size_t k, std::uint64_t seed) {
  if (k == 0) fail(ErrorCode::kValidation, "team count must be positive");
  Rng rng(seed);
  Partitioning part(std::vector<int>(pool.size()), k);
  for (int& t : part.team) t = static_cast<int>(rng.below(k));
  return part;
}

std::vector<Vector> kmeans_plus_plus(const CandidatePool& pool, std::size_t k, std::uint64_t seed) {
  const std::size_t n = pool.size();
  if (k == 0 || k > n) fail(ErrorCode::kInfeasible, "k-means needs 1 <= k <= n");
  Rng rng(seed);
  std::vector<Vector> centers;
  centers.reserve(k);
  auto first = pool.row(rng.below(n));
  centers.emplace_back(first.begin(), first.end());
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_l2(pool.row(i), centers[0]);
  while (centers.size() < k) {
    const double total = std::accumulate(nearest.begin(), nearest.end(), 0.0);
    std::size_t pick = 0;
    if (total > 0.0) {
      const double draw = rng.uniform() * total;
      double acc = 0.0;
      pick = n;
      for (std::size_t i = 0; i < n; ++i) {
        acc += nearest[i];
        if (nearest[i] > 0.0 && draw < acc) {
          pick = i;
          break;
        }
      }
      if (pick == n) {
        // Rounding left the draw past the last positive weight.
        for (std::size_t i = n; i-- > 0;) {
          if (nearest[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      pick = rng.below(n);
    }
    auto row = pool.row(pick);
    centers.emplace_back(row.begin(), row.end());
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], squared_l2(pool.row(i), centers.back()));
  }
  return centers;
}

KMeansResult lloyd(const CandidatePool& pool, std::vector<Vector> centers, std::size_t outliers,
                   const KMeansOptions& options) {
  const std::size_t n = pool.size();
  const std::size_t k = centers.size();
  const std::size_t d = pool.dim();
  if (k == 0) fail(ErrorCode::kValidation, "k-means needs at least one center");
  if (k + outliers > n) fail(ErrorCode::kInfeasible, "k-means needs k + outliers <= n");
  for (const auto& c : centers) {
    if (c.size() != d) fail(ErrorCode::kDimension, "center dimension does not match the pool");
  }

  KMeansResult result;
  std::vector<int> label(n, -1);
  std::vector<int> previous;
  std::vector<double> dist(n);
  std::vector<std::size_t> order(n);

  auto assign = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double dd = squared_l2(pool.row(i), centers[c]);
        if (dd < best) {
          best = dd;
          best_c = static_cast<int>(c);
        }
      }
      label[i] = best_c;
      dist[i] = best;
    }
    if (outliers > 0) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
      for (std::size_t r = 0; r < outliers; ++r) label[order[r]] = kRemoved;
    }
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] != kRemoved) objective += dist[i];
    }
    result.objective_history.push_back(objective);
  };

  int iter = 0;
  assign();
  while (iter < options.max_iter) {
    ++iter;
    std::vector<Vector> sums(k, Vector(d, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == kRemoved) continue;
      auto row = pool.row(i);
      auto& s = sums[static_cast<std::size_t>(label[i])];
      for (std::size_t j = 0; j < d; ++j) s[j] += row[j];
      ++counts[static_cast<std::size_t>(label[i])];
    }
    std::vector<char> reseeded(n, 0);
    double movement = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      Vector next(d);
      if (counts[c] > 0) {
        for (std::size_t j = 0; j < d; ++j) next[j] = sums[c][j] / static_cast<double>(counts[c]);
      } else {
        std::size_t far = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (label[i] == kRemoved || reseeded[i]) continue;
          if (far == n || dist[i] > dist[far]) far = i;
        }
        if (far == n) {
          next = centers[c];
        } else {
          reseeded[far] = 1;
          auto row = pool.row(far);
          next.assign(row.begin(), row.end());
        }
      }
      movement = std::max(movement, std::sqrt(squared_l2(next, centers[c])));
      centers[c] = std::move(next);
    }
    previous = label;
    assign();
    if (label == previous || movement <= options.tol) break;
  }

  result.centers = std::move(centers);
  result.partitioning = Partitioning(std::move(label), k);
  result.iterations = iter;
  return result;
}

KMeansResult kmeans_plain(const CandidatePool& pool, std::size_t k, std::uint64_t seed, const KMeansOptions& options) {
  return lloyd(pool, kmeans_plus_plus(pool, k, seed), 0, options);
}

KMeansResult kmeans_target_seeded(const CandidatePool& pool, const TargetSet& targets, const KMeansOptions& options) {
  check_targets(pool, targets, targets.size());
  std::vector<Vector> centers;
  for (std::size_t t = 0; t < targets.size(); ++t) centers.emplace_back(targets[t].begin(), targets[t].end());
  return lloyd(pool, std::move(centers), 0, options);
}

KMeansResult kmeans_minus_minus(const CandidatePool& pool, std::size_t k, std::size_t outliers, std::uint64_t seed,
                                const KMeansOptions& options) {
  if (k + outliers > pool.size()) fail(ErrorCode::kInfeasible, "k-means-- needs k + outliers <= n");
  return lloyd(pool, kmeans_plus_plus(pool, k, seed), outliers, options);
}

std::vector<std::size_t> nearest_neighbor_outliers(const CandidatePool& pool, std::size_t count) {
  const std::size_t n = pool.size();
  if (count == 0) return {};
  if (n < 2) fail(ErrorCode::kInfeasible, "nearest neighbours need at least two points");
  if (count >= n) fail(ErrorCode::kBudget, "cannot remove every point");
  std::vector<double> nn(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dd = squared_l2(pool.row(i), pool.row(j));
      nn[i] = std::min(nn[i], dd);
      nn[j] = std::min(nn[j], dd);
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nn[a] > nn[b]; });
  std::vector<std::size_t> out(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(out.begin(), out.end());
  return out;
}

Partitioning knn_then_kmeans(const CandidatePool& pool, std::size_t k, std::size_t count, std::uint64_t seed,
                             const KMeansOptions& options) {
  if (k + count > pool.size()) fail(ErrorCode::kInfeasible, "knn+k-means needs k + l <= n");
  const auto removed = nearest_neighbor_outliers(pool, count);
  const auto everyone = all_members(pool);
  std::vector<std::size_t> kept;
  std::set_difference(everyone.begin(), everyone.end(), removed.begin(), removed.end(), std::back_inserter(kept));
  const CandidatePool sub = pool.subset(kept);
  const KMeansResult km = kmeans_plain(sub, k, seed, options);
  Partitioning part(std::vector<int>(pool.size(), kRemoved), k);
  for (std::size_t s = 0; s < kept.size(); ++s) part.team[kept[s]] = km.partitioning.team[s];
  return part;
}

std::vector<std::size_t> btf_team_sizes(std::size_t n, std::size_t k, std::size_t budget) {
  if (k == 0 || budget + k > n) fail(ErrorCode::kInfeasible, "best-team-first needs k <= n - l");
  const std::size_t usable = n - budget;
  std::vector<std::size_t> sizes(k, usable / k);
  for (std::size_t t = 0; t < usable % k; ++t) ++sizes[t];
  return sizes;
}

Partitioning best_team_first(const CandidatePool& pool, const TargetSet& targets, std::size_t budget,
                             CisMethod method, const QpOptions& qp) {
  const std::size_t k = targets.size();
  check_targets(pool, targets, k);
  const auto sizes = btf_team_sizes(pool.size(), k, budget);
  Partitioning part(std::vector<int>(pool.size(), kRemoved), k);
  std::vector<std::size_t> remaining = all_members(pool);
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t drop = remaining.size() - sizes[t];
    const auto removed = cis_remove(pool, remaining, targets[t], drop, method, qp);
    std::vector<std::size_t> chosen;
    std::set_difference(remaining.begin(), remaining.end(), removed.begin(), removed.end(),
                        std::back_inserter(chosen));
    for (std::size_t i : chosen) part.team[i] = static_cast<int>(t);
    remaining = removed;
  }
  return part;
}

Partitioning relabel_to_targets(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets) {
  const TeamStats stats = team_stats(pool, part, targets);
  const Matching match = hungarian_match(stats.centroids, targets);
  Partitioning out = part;
  for (int& t : out.team) {
    if (t != kRemoved) t = static_cast<int>(match.perm[static_cast<std::size_t>(t)]);
  }
  return out;
}

Partitioning post_pipeline(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets,
                           std::size_t budget, const BenefitOptions& options) {
  Partitioning relabeled = relabel_to_targets(pool, part, targets);
  if (budget == 0) return relabeled;
  const BenefitMatrix matrix = build_benefit_matrix(pool, relabeled, targets, budget, options);
  const RemovalAllocation allocation = allocate_removals_dp(matrix, budget);
  return apply_removals(std::move(relabeled), matrix, allocation);
}

}  // namespace gtp
