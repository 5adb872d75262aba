#include "gtp/cis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gtp/error.hpp"

namespace gtp {

namespace {

void check_budget(std::size_t members, std::size_t count, ConstRow target, const CandidatePool& pool) {
  if (target.size() != pool.dim()) {
    fail(ErrorCode::kDimension, "target has dimension " + std::to_string(target.size()) +
                                    " but the pool has dimension " + std::to_string(pool.dim()));
  }
  if (count >= members) {
    fail(ErrorCode::kBudget, "cannot remove " + std::to_string(count) + " of " + std::to_string(members) +
                                 " points; at least one must remain");
  }
}

// Dense copy of the member points plus the pieces of the objective
// f(x) = |P x / c - t|^2 that every iteration needs.
class RelaxedProblem {
 public:
  RelaxedProblem(const CandidatePool& pool, std::span<const std::size_t> members, ConstRow target,
                 std::size_t count)
      : m_(members.size()),
        d_(pool.dim()),
        keep_(static_cast<double>(members.size() - count)),
        target_(target.begin(), target.end()),
        points_(m_ * d_),
        u_(d_),
        r_(d_) {
    for (std::size_t i = 0; i < m_; ++i) {
      auto row = pool.row(members[i]);
      std::copy(row.begin(), row.end(), points_.begin() + static_cast<std::ptrdiff_t>(i * d_));
    }
    for (double v : points_) {
      if (!std::isfinite(v)) fail(ErrorCode::kNumeric, "non-finite point coordinate");
    }
  }

  std::size_t size() const { return m_; }
  double keep() const { return keep_; }

  double objective(const Vector& x) {
    residual(x);
    double f = 0.0;
    for (double v : r_) f += v * v;
    return f;
  }

  // Returns f(x) and fills grad.
  double gradient(const Vector& x, Vector& grad) {
    const double f = objective(x);
    const double scale = 2.0 / keep_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double* p = &points_[i * d_];
      double dot = 0.0;
      for (std::size_t j = 0; j < d_; ++j) dot += p[j] * r_[j];
      grad[i] = scale * dot;
    }
    return f;
  }

  // Largest eigenvalue of P P^T by power iteration.
  double spectral_norm_sq(int steps) const {
    Vector gram(d_ * d_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double* p = &points_[i * d_];
      for (std::size_t a = 0; a < d_; ++a) {
        for (std::size_t b = 0; b < d_; ++b) gram[a * d_ + b] += p[a] * p[b];
      }
    }
    Vector v(d_, 1.0 / std::sqrt(static_cast<double>(d_)));
    Vector w(d_);
    double lambda = 0.0;
    for (int s = 0; s < steps; ++s) {
      for (std::size_t a = 0; a < d_; ++a) {
        double acc = 0.0;
        for (std::size_t b = 0; b < d_; ++b) acc += gram[a * d_ + b] * v[b];
        w[a] = acc;
      }
      double norm = 0.0;
      for (double c : w) norm += c * c;
      norm = std::sqrt(norm);
      if (norm == 0.0) return 0.0;
      lambda = norm;
      for (std::size_t a = 0; a < d_; ++a) v[a] = w[a] / norm;
    }
    return lambda;
  }

 private:
  void residual(const Vector& x) {
    std::fill(u_.begin(), u_.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double xi = x[i];
      if (xi == 0.0) continue;
      const double* p = &points_[i * d_];
      for (std::size_t j = 0; j < d_; ++j) u_[j] += xi * p[j];
    }
    for (std::size_t j = 0; j < d_; ++j) r_[j] = u_[j] / keep_ - target_[j];
  }

  std::size_t m_;
  std::size_t d_;
  double keep_;
  Vector target_;
  Vector points_;
  Vector u_;
  Vector r_;
};

double clipped_sum(const Vector& x, double shift) {
  double sum = 0.0;
  for (double v : x) sum += std::clamp(v + shift, 0.0, 1.0);
  return sum;
}

// Euclidean projection onto {0 <= x <= 1, sum(x) >= floor_sum}. When clipping
// alone violates the sum constraint, the shift lambda >= 0 with
// sum(clip(x + lambda)) = floor_sum is found by bisection; the upper end of
// the bracket is used so the result stays feasible.
void project(const Vector& in, double floor_sum, Vector& out) {
  out.resize(in.size());
  if (clipped_sum(in, 0.0) >= floor_sum) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::clamp(in[i], 0.0, 1.0);
    return;
  }
  double lo = 0.0;
  double hi = 1.0 - *std::min_element(in.begin(), in.end());
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (clipped_sum(in, mid) >= floor_sum) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::clamp(in[i] + hi, 0.0, 1.0);
}

double norm_diff(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace

std::vector<std::size_t> all_members(const CandidatePool& pool) {
  std::vector<std::size_t> out(pool.size());
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

std::vector<std::size_t> greedy_remove(const CandidatePool& pool, std::span<const std::size_t> members,
                                       ConstRow target, std::size_t count) {
  check_budget(members.size(), count, target, pool);
  const std::size_t d = pool.dim();
  Vector sum(d, 0.0);
  for (std::size_t i : members) {
    auto r = pool.row(i);
    for (std::size_t j = 0; j < d; ++j) sum[j] += r[j];
  }
  std::vector<bool> gone(members.size(), false);
  std::vector<std::size_t> removed;
  removed.reserve(count);
  std::size_t remaining = members.size();
  for (std::size_t step = 0; step < count; ++step) {
    const double denom = static_cast<double>(remaining - 1);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_pos = members.size();
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
      if (gone[pos]) continue;
      auto r = pool.row(members[pos]);
      double dist = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = (sum[j] - r[j]) / denom - target[j];
        dist += diff * diff;
      }
      if (dist < best) {
        best = dist;
        best_pos = pos;
      }
    }
    gone[best_pos] = true;
    auto r = pool.row(members[best_pos]);
    for (std::size_t j = 0; j < d; ++j) sum[j] -= r[j];
    --remaining;
    removed.push_back(members[best_pos]);
  }
  return removed;
}

RelaxedSolution solve_relaxed_qp(const CandidatePool& pool, std::span<const std::size_t> members,
                                 ConstRow target, std::size_t count, const QpOptions& options) {
  check_budget(members.size(), count, target, pool);
  if (!(options.tol > 0.0)) fail(ErrorCode::kValidation, "QP tolerance must be positive");
  for (double v : target) {
    if (!std::isfinite(v)) fail(ErrorCode::kNumeric, "non-finite target coordinate");
  }
  RelaxedProblem problem(pool, members, target, count);
  const std::size_t m = problem.size();
  const double floor_sum = problem.keep();

  RelaxedSolution sol;
  Vector x(m, 1.0);
  Vector grad(m);
  Vector trial(m);
  Vector step(m);

  auto stationarity = [&](const Vector& at) {
    problem.gradient(at, grad);
    for (std::size_t i = 0; i < m; ++i) step[i] = at[i] - grad[i];
    project(step, floor_sum, trial);
    return norm_diff(at, trial);
  };

  double fx = problem.objective(x);
  if (count == 0) {
    // The only feasible point is the all-ones vector.
    sol.x = std::move(x);
    sol.objective = fx;
    sol.kkt_residual = 0.0;
    sol.converged = true;
    return sol;
  }

  double lipschitz = 2.0 * problem.spectral_norm_sq(50) / (floor_sum * floor_sum);
  if (lipschitz <= 0.0) lipschitz = 1.0;

  // Accelerated projected gradient with backtracking and function-value
  // restart. A stationary iterate is returned as soon as one is found; if the
  // iteration budget runs out, the best iterate seen is returned instead.
  Vector best = x;
  double f_best = fx;
  Vector y = x;
  Vector x_prev = x;
  Vector grad_y(m);
  double momentum = 1.0;
  double residual = stationarity(x);
  int iter = 0;
  while (residual > options.tol && iter < options.max_iter) {
    ++iter;
    const double fy = problem.gradient(y, grad_y);
    double f_new = 0.0;
    for (int halvings = 0; halvings < 60; ++halvings) {
      for (std::size_t i = 0; i < m; ++i) step[i] = y[i] - grad_y[i] / lipschitz;
      project(step, floor_sum, trial);
      f_new = problem.objective(trial);
      double linear = 0.0;
      double sq = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double diff = trial[i] - y[i];
        linear += grad_y[i] * diff;
        sq += diff * diff;
      }
      if (f_new <= fy + linear + 0.5 * lipschitz * sq + 1e-15 * std::abs(fy)) break;
      lipschitz *= 2.0;
    }
    x_prev = x;
    x = trial;
    if (f_new > fx) {
      // Restart: drop momentum and continue from the previous iterate's
      // neighbourhood.
      momentum = 1.0;
      y = x;
    } else {
      const double next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      const double beta = (momentum - 1.0) / next;
      for (std::size_t i = 0; i < m; ++i) y[i] = x[i] + beta * (x[i] - x_prev[i]);
      momentum = next;
    }
    fx = f_new;
    if (fx < f_best) {
      f_best = fx;
      best = x;
    }
    residual = stationarity(x);
  }

  sol.x = residual <= options.tol ? std::move(x) : std::move(best);
  sol.objective = problem.objective(sol.x);
  sol.kkt_residual = stationarity(sol.x);
  sol.iterations = iter;
  sol.converged = sol.kkt_residual <= options.tol;
  return sol;
}

std::vector<std::size_t> cvx_select(const CandidatePool& pool, std::span<const std::size_t> members,
                                    ConstRow target, std::size_t count, const QpOptions& options) {
  const RelaxedSolution sol = solve_relaxed_qp(pool, members, target, count, options);
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sol.x[a] > sol.x[b]; });
  std::vector<std::size_t> kept;
  kept.reserve(members.size() - count);
  for (std::size_t r = 0; r < members.size() - count; ++r) kept.push_back(members[order[r]]);
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<std::size_t> cis_remove(const CandidatePool& pool, std::span<const std::size_t> members,
                                    ConstRow target, std::size_t count, CisMethod method,
                                    const QpOptions& options) {
  std::vector<std::size_t> removed;
  if (method == CisMethod::kGreedy) {
    removed = greedy_remove(pool, members, target, count);
  } else {
    const auto kept = cvx_select(pool, members, target, count, options);
    std::set_difference(members.begin(), members.end(), kept.begin(), kept.end(), std::back_inserter(removed));
  }
  std::sort(removed.begin(), removed.end());
  return removed;
}

double remaining_objective(const CandidatePool& pool, std::span<const std::size_t> members,
                           std::span<const std::size_t> removed, ConstRow target) {
  std::vector<std::size_t> kept;
  kept.reserve(members.size());
  std::set_difference(members.begin(), members.end(), removed.begin(), removed.end(), std::back_inserter(kept));
  return squared_l2(mean_of(pool, kept), target);
}

RemovalBenefit removal_benefit(const CandidatePool& pool, std::span<const std::size_t> members,
                               ConstRow target, std::size_t count, CisMethod method,
                               const QpOptions& options) {
  check_budget(members.size(), count, target, pool);
  RemovalBenefit out;
  if (count == 0) return out;
  out.removed = cis_remove(pool, members, target, count, method, options);
  const double before = squared_l2(mean_of(pool, members), target);
  out.benefit = before - remaining_objective(pool, members, out.removed, target);
  return out;
}

}  // namespace gtp
