#include "gtp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gtp/error.hpp"

namespace gtp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kBudget: return "budget";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSizeGuard: return "size_guard";
    case ErrorCode::kNumeric: return "numeric";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUnknownAlgorithm: return "unknown_algorithm";
  }
  return "unknown";
}

namespace {

void require_finite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorCode::kNumeric, std::string(what) + " contains a non-finite value");
  }
}

std::vector<double> flatten(const std::vector<Vector>& rows, std::size_t dim, const char* what) {
  std::vector<double> out;
  out.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      fail(ErrorCode::kDimension, std::string(what) + " row " + std::to_string(i) + " has dimension " +
                                      std::to_string(rows[i].size()) + ", expected " + std::to_string(dim));
    }
    out.insert(out.end(), rows[i].begin(), rows[i].end());
  }
  return out;
}

}  // namespace

CandidatePool::CandidatePool(std::vector<std::string> ids, std::vector<double> values, std::size_t dim)
    : ids_(std::move(ids)), values_(std::move(values)), dim_(dim) {
  if (dim_ == 0) fail(ErrorCode::kDimension, "pool dimension must be at least 1");
  if (ids_.empty()) fail(ErrorCode::kValidation, "pool must contain at least one candidate");
  if (values_.size() != ids_.size() * dim_) {
    fail(ErrorCode::kDimension, "pool has " + std::to_string(values_.size()) + " values for " +
                                    std::to_string(ids_.size()) + " candidates of dimension " +
                                    std::to_string(dim_));
  }
  require_finite(values_, "pool");
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) fail(ErrorCode::kValidation, "duplicate candidate id '" + ids_[i] + "'");
  }
}

CandidatePool CandidatePool::from_rows(std::vector<std::string> ids, const std::vector<Vector>& rows) {
  if (rows.empty()) fail(ErrorCode::kValidation, "pool must contain at least one candidate");
  if (ids.size() != rows.size()) fail(ErrorCode::kValidation, "id count does not match row count");
  const std::size_t dim = rows.front().size();
  return CandidatePool(std::move(ids), flatten(rows, dim, "pool"), dim);
}

CandidatePool CandidatePool::from_rows(const std::vector<Vector>& rows) {
  std::vector<std::string> ids(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) ids[i] = std::to_string(i);
  return from_rows(std::move(ids), rows);
}

std::size_t CandidatePool::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) fail(ErrorCode::kValidation, "unknown candidate id '" + id + "'");
  return it->second;
}

CandidatePool CandidatePool::subset(std::span<const std::size_t> indices) const {
  std::vector<std::string> ids;
  std::vector<double> values;
  ids.reserve(indices.size());
  values.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    ids.push_back(ids_.at(i));
    auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
  }
  return CandidatePool(std::move(ids), std::move(values), dim_);
}

TargetSet::TargetSet(std::vector<double> values, std::size_t dim) : values_(std::move(values)), dim_(dim) {
  if (dim_ == 0) fail(ErrorCode::kDimension, "target dimension must be at least 1");
  if (values_.empty()) fail(ErrorCode::kValidation, "target set must contain at least one target");
  if (values_.size() % dim_ != 0) fail(ErrorCode::kDimension, "target values are not a multiple of the dimension");
  require_finite(values_, "targets");
}

TargetSet TargetSet::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) fail(ErrorCode::kValidation, "target set must contain at least one target");
  const std::size_t dim = rows.front().size();
  return TargetSet(flatten(rows, dim, "target"), dim);
}

std::vector<std::size_t> Partitioning::members(std::size_t t) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < team.size(); ++i) {
    if (team[i] == static_cast<int>(t)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Partitioning::removed() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < team.size(); ++i) {
    if (team[i] == kRemoved) out.push_back(i);
  }
  return out;
}

std::size_t Partitioning::removed_count() const {
  return static_cast<std::size_t>(std::count(team.begin(), team.end(), kRemoved));
}

std::vector<std::size_t> Partitioning::team_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (int t : team) {
    if (t != kRemoved) ++sizes[static_cast<std::size_t>(t)];
  }
  return sizes;
}

void validate(const Partitioning& part, const CandidatePool& pool) {
  if (part.k == 0) fail(ErrorCode::kValidation, "partitioning must have at least one team");
  if (part.team.size() != pool.size()) {
    fail(ErrorCode::kValidation, "partitioning covers " + std::to_string(part.team.size()) +
                                     " candidates but the pool has " + std::to_string(pool.size()));
  }
  for (std::size_t i = 0; i < part.team.size(); ++i) {
    const int t = part.team[i];
    if (t != kRemoved && (t < 0 || t >= static_cast<int>(part.k))) {
      fail(ErrorCode::kValidation, "candidate '" + pool.id(i) + "' has team index " + std::to_string(t) +
                                       " outside [0, " + std::to_string(part.k) + ")");
    }
  }
}

void check_targets(const CandidatePool& pool, const TargetSet& targets, std::size_t k) {
  if (targets.dim() != pool.dim()) {
    fail(ErrorCode::kDimension, "targets have dimension " + std::to_string(targets.dim()) +
                                    " but the pool has dimension " + std::to_string(pool.dim()));
  }
  if (targets.size() != k) {
    fail(ErrorCode::kValidation,
         "expected " + std::to_string(k) + " targets, got " + std::to_string(targets.size()));
  }
}

double squared_l2(ConstRow u, ConstRow v) {
  if (u.size() != v.size()) {
    fail(ErrorCode::kDimension,
         "vectors have dimensions " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double diff = u[i] - v[i];
    sum += diff * diff;
  }
  return sum;
}

Vector mean(const std::vector<Vector>& points, std::size_t dim) {
  Vector sum(dim, 0.0);
  for (const auto& p : points) {
    if (p.size() != dim) {
      fail(ErrorCode::kDimension, "point of dimension " + std::to_string(p.size()) + " in a set of dimension " +
                                      std::to_string(dim));
    }
    for (std::size_t j = 0; j < dim; ++j) sum[j] += p[j];
  }
  if (!points.empty()) {
    const double n = static_cast<double>(points.size());
    for (double& s : sum) s /= n;
  }
  return sum;
}

Vector mean_of(const CandidatePool& pool, std::span<const std::size_t> members) {
  const std::size_t d = pool.dim();
  Vector sum(d, 0.0);
  for (std::size_t i : members) {
    auto r = pool.row(i);
    for (std::size_t j = 0; j < d; ++j) sum[j] += r[j];
  }
  if (!members.empty()) {
    const double n = static_cast<double>(members.size());
    for (double& s : sum) s /= n;
  }
  return sum;
}

TeamStats team_stats(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets) {
  validate(part, pool);
  check_targets(pool, targets, part.k);
  const std::size_t d = pool.dim();
  TeamStats stats;
  stats.centroids.assign(part.k, Vector(d, 0.0));
  stats.sizes.assign(part.k, 0);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const int t = part.team[i];
    if (t == kRemoved) continue;
    auto r = pool.row(i);
    auto& sum = stats.centroids[static_cast<std::size_t>(t)];
    for (std::size_t j = 0; j < d; ++j) sum[j] += r[j];
    ++stats.sizes[static_cast<std::size_t>(t)];
  }
  stats.costs.resize(part.k);
  for (std::size_t t = 0; t < part.k; ++t) {
    if (stats.sizes[t] > 0) {
      const double n = static_cast<double>(stats.sizes[t]);
      for (double& s : stats.centroids[t]) s /= n;
    }
    stats.costs[t] = squared_l2(stats.centroids[t], targets[t]);
  }
  return stats;
}

double partition_cost(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets) {
  const TeamStats stats = team_stats(pool, part, targets);
  return std::accumulate(stats.costs.begin(), stats.costs.end(), 0.0);
}

double weighted_partition_cost(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets) {
  const TeamStats stats = team_stats(pool, part, targets);
  double total = 0.0;
  for (std::size_t t = 0; t < part.k; ++t) total += stats.costs[t] * static_cast<double>(stats.sizes[t]);
  return total;
}

SolveReport make_report(const CandidatePool& pool, const Partitioning& part, const TargetSet& targets) {
  TeamStats stats = team_stats(pool, part, targets);
  SolveReport report;
  report.partitioning = part;
  report.cost = std::accumulate(stats.costs.begin(), stats.costs.end(), 0.0);
  report.per_team_cost = std::move(stats.costs);
  report.centroids = std::move(stats.centroids);
  report.team_sizes = std::move(stats.sizes);
  for (std::size_t i : part.removed()) report.removed_ids.push_back(pool.id(i));
  return report;
}

}  // namespace gtp
