#pragma once

#include <cstdint>
#include <vector>

#include "gtp/cis.hpp"
#include "gtp/core.hpp"
#include "gtp/guided_split.hpp"

namespace gtp {

// perm[i] is the target matched to team i.
struct Matching {
  std::vector<std::size_t> perm;
  double total = 0.0;
};

// Minimum-cost perfect matching on a square row-major k x k cost matrix,
// O(k^3) with row/column potentials. total is summed in row order.
Matching hungarian_solve(const std::vector<double>& cost, std::size_t k);

// Matches team centroids to targets under squared_l2.
Matching hungarian_match(const std::vector<Vector>& centroids, const TargetSet& targets);

// Uniform independent team draws; no post-processing.
Partitioning random_assignment(const CandidatePool& pool, std::size_t k, std::uint64_t seed);

struct KMeansOptions {
  int max_iter = 300;
  double tol = 1e-9;  // on the largest center movement
};

struct KMeansResult {
  std::vector<Vector> centers;
  Partitioning partitioning;  // outliers, if any, are kRemoved
  int iterations = 0;
  // Objective over non-outliers after each assignment step.
  std::vector<double> objective_history;
};

// k-means++ seeding from `seed`.
std::vector<Vector> kmeans_plus_plus(const CandidatePool& pool, std::size_t k, std::uint64_t seed);

// Lloyd iterations from `centers`. Each assignment step marks the `outliers`
// points farthest from their nearest center (ties to the lower index) and
// updates the centers from the rest. outliers = 0 is plain Lloyd. An emptied
// cluster is reseeded at the inlier farthest from its center.
KMeansResult lloyd(const CandidatePool& pool, std::vector<Vector> centers, std::size_t outliers,
                   const KMeansOptions& options = {});

KMeansResult kmeans_plain(const CandidatePool& pool, std::size_t k, std::uint64_t seed,
                          const KMeansOptions& options = {});
KMeansResult kmeans_target_seeded(const CandidatePool& pool, const TargetSet& targets,
                                  const KMeansOptions& options = {});
// k-means--: clustering and outlier detection together.
KMeansResult kmeans_minus_minus(const CandidatePool& pool, std::size_t k, std::size_t outliers, std::uint64_t seed,
                                const KMeansOptions& options = {});

// The `count` points with the largest nearest-neighbour distance (ties to the
// lower index), ascending.
std::vector<std::size_t> nearest_neighbor_outliers(const CandidatePool& pool, std::size_t count);

// Drops nearest_neighbor_outliers, then plain k-means on the rest.
Partitioning knn_then_kmeans(const CandidatePool& pool, std::size_t k, std::size_t count, std::uint64_t seed,
                             const KMeansOptions& options = {});

// Team sizes floor((n - l) / k), the first (n - l) mod k teams one larger.
std::vector<std::size_t> btf_team_sizes(std::size_t n, std::size_t k, std::size_t budget);

// Best-team-first: for each target in order, select a team of the prescribed
// size from the remaining points with the CIS solver; leftovers are removed.
Partitioning best_team_first(const CandidatePool& pool, const TargetSet& targets, std::size_t budget,
                             CisMethod method, const QpOptions& qp = {});

// Renames teams so team i gets the target Hungarian matching assigns to it.
Partitioning relabel_to_targets(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets);

// Relabel, then remove `budget` points with the benefit matrix and the DP.
Partitioning post_pipeline(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets,
                           std::size_t budget, const BenefitOptions& options = {});

}  // namespace gtp
