#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace gtp {

using Vector = std::vector<double>;
using ConstRow = std::span<const double>;

// A pool of n candidates, each a d-dimensional feature vector, stored
// row-major. Ids are unique; all entries are finite.
class CandidatePool {
 public:
  CandidatePool(std::vector<std::string> ids, std::vector<double> values, std::size_t dim);

  static CandidatePool from_rows(std::vector<std::string> ids, const std::vector<Vector>& rows);
  // Ids are the decimal row indices.
  static CandidatePool from_rows(const std::vector<Vector>& rows);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  ConstRow row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::vector<double>& values() const noexcept { return values_; }

  // Throws kValidation for an unknown id.
  std::size_t index_of(const std::string& id) const;

  // Rows at the given indices, in the given order.
  CandidatePool subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::size_t dim_;
  std::unordered_map<std::string, std::size_t> index_;
};

// k target vectors of a common dimension.
class TargetSet {
 public:
  TargetSet(std::vector<double> values, std::size_t dim);

  static TargetSet from_rows(const std::vector<Vector>& rows);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  ConstRow operator[](std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
  std::size_t dim_;
};

inline constexpr int kRemoved = -1;

// Team index (0-based) or kRemoved for every candidate of a pool.
struct Partitioning {
  std::vector<int> team;
  std::size_t k = 0;

  Partitioning() = default;
  Partitioning(std::vector<int> assignment, std::size_t teams)
      : team(std::move(assignment)), k(teams) {}

  std::size_t size() const noexcept { return team.size(); }
  // Ascending candidate indices.
  std::vector<std::size_t> members(std::size_t t) const;
  std::vector<std::size_t> removed() const;
  std::size_t removed_count() const;
  std::vector<std::size_t> team_sizes() const;

  bool operator==(const Partitioning&) const = default;
};

// Throws kValidation unless part covers every candidate of pool with team
// indices in [0, k) or kRemoved.
void validate(const Partitioning& part, const CandidatePool& pool);
// Throws kDimension / kValidation when targets cannot be used with pool and part.
void check_targets(const CandidatePool& pool, const TargetSet& targets, std::size_t k);

double squared_l2(ConstRow u, ConstRow v);

// Coordinatewise mean; the empty list yields the zero vector of dimension dim.
Vector mean(const std::vector<Vector>& points, std::size_t dim);
// Mean of the pool rows at `members`, accumulated in the order given.
Vector mean_of(const CandidatePool& pool, std::span<const std::size_t> members);

struct TeamStats {
  std::vector<Vector> centroids;
  std::vector<std::size_t> sizes;
  std::vector<double> costs;  // squared_l2(centroid_i, t_i)
};

// Team sums accumulate in ascending candidate index, so identical
// partitionings always produce bit-identical costs.
TeamStats team_stats(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets);

double partition_cost(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets);
// Each team term scaled by the team size.
double weighted_partition_cost(const CandidatePool& pool, const Partitioning& part,
                               const TargetSet& targets);

struct SolveReport {
  std::string algorithm;
  Partitioning partitioning;
  double cost = 0.0;
  std::vector<double> per_team_cost;
  std::vector<Vector> centroids;
  std::vector<std::size_t> team_sizes;
  std::vector<std::string> removed_ids;
  int iterations = 0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
};

SolveReport make_report(const CandidatePool& pool, const Partitioning& part,
                        const TargetSet& targets);

}  // namespace gtp
