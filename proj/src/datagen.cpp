#include "gtp/datagen.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "gtp/error.hpp"
#include "gtp/rng.hpp"

namespace gtp {

namespace {

struct DirectionEntry {
  std::uint32_t polynomial;
  std::vector<std::uint32_t> initial;
};

const std::vector<DirectionEntry>& direction_table() {
  static const std::vector<DirectionEntry> table = {
#include "sobol_directions.inc"
  };
  return table;
}

}  // namespace

std::size_t SobolSequence::max_dim() { return direction_table().size(); }

SobolSequence::SobolSequence(std::size_t dim) : dim_(dim), directions_(dim * kMaxBits), state_(dim, 0) {
  if (dim == 0 || dim > max_dim()) {
    fail(ErrorCode::kDimension, "Sobol sequence supports dimensions 1.." + std::to_string(max_dim()) + ", got " +
                                    std::to_string(dim));
  }
  const auto& table = direction_table();
  for (std::size_t j = 0; j < dim; ++j) {
    std::uint32_t* v = &directions_[j * kMaxBits];
    if (j == 0) {
      for (std::size_t b = 0; b < kMaxBits; ++b) v[b] = 1u << (kMaxBits - 1 - b);
      continue;
    }
    const std::uint32_t poly = table[j].polynomial;
    const std::size_t degree = static_cast<std::size_t>(std::bit_width(poly)) - 1;
    std::vector<std::uint32_t> m(kMaxBits);
    for (std::size_t b = 0; b < degree && b < kMaxBits; ++b) m[b] = table[j].initial[b];
    for (std::size_t b = degree; b < kMaxBits; ++b) {
      std::uint32_t value = m[b - degree] ^ (m[b - degree] << degree);
      for (std::size_t c = 1; c < degree; ++c) {
        // Coefficient a_c of the primitive polynomial, highest first.
        if ((poly >> (degree - c)) & 1u) value ^= m[b - c] << c;
      }
      m[b] = value;
    }
    for (std::size_t b = 0; b < kMaxBits; ++b) v[b] = m[b] << (kMaxBits - 1 - b);
  }
}

Vector SobolSequence::next() {
  Vector out(dim_);
  constexpr double kScale = 0x1.0p-32;
  for (std::size_t j = 0; j < dim_; ++j) out[j] = static_cast<double>(state_[j]) * kScale;
  // Gray-code step: flip the direction of the lowest zero bit of the index.
  const auto bit = static_cast<std::size_t>(std::countr_one(index_));
  if (bit >= kMaxBits) fail(ErrorCode::kValidation, "Sobol sequence exhausted");
  for (std::size_t j = 0; j < dim_; ++j) state_[j] ^= directions_[j * kMaxBits + bit];
  ++index_;
  return out;
}

void SobolSequence::skip(std::uint64_t count) {
  for (std::uint64_t s = 0; s < count; ++s) next();
}

TargetSet targets_mean(const CandidatePool& pool, std::size_t k) {
  if (k == 0) fail(ErrorCode::kValidation, "target count must be positive");
  const Vector centroid = mean_of(pool, [&] {
    std::vector<std::size_t> all(pool.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }());
  std::vector<double> values;
  values.reserve(k * pool.dim());
  for (std::size_t t = 0; t < k; ++t) values.insert(values.end(), centroid.begin(), centroid.end());
  return TargetSet(std::move(values), pool.dim());
}

TargetSet targets_sample(const CandidatePool& pool, std::size_t k, std::uint64_t seed) {
  if (k == 0) fail(ErrorCode::kValidation, "target count must be positive");
  if (k > pool.size()) {
    fail(ErrorCode::kBudget, "cannot sample " + std::to_string(k) + " targets from " +
                                 std::to_string(pool.size()) + " candidates");
  }
  Rng rng(seed);
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> values;
  values.reserve(k * pool.dim());
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t pick = t + static_cast<std::size_t>(rng.below(order.size() - t));
    std::swap(order[t], order[pick]);
    auto row = pool.row(order[t]);
    values.insert(values.end(), row.begin(), row.end());
  }
  return TargetSet(std::move(values), pool.dim());
}

TargetSet targets_sobol(std::size_t k, std::size_t dim, std::uint64_t skip) {
  if (k == 0) fail(ErrorCode::kValidation, "target count must be positive");
  SobolSequence seq(dim);
  seq.skip(skip);
  std::vector<double> values;
  values.reserve(k * dim);
  for (std::size_t t = 0; t < k; ++t) {
    const Vector p = seq.next();
    values.insert(values.end(), p.begin(), p.end());
  }
  return TargetSet(std::move(values), dim);
}

SynthInstance gen_synthetic(const SynthConfig& config) {
  if (config.k == 0 || config.m == 0 || config.d == 0) fail(ErrorCode::kValidation, "k, m and d must be at least 1");
  if (!(config.sigma >= 0.0) || !std::isfinite(config.sigma)) {
    fail(ErrorCode::kValidation, "sigma must be finite and nonnegative");
  }
  const std::size_t d = config.d;
  const std::size_t n = config.k * config.m + config.noise;
  Rng rng(config.seed);

  std::vector<double> target_values(config.k * d);
  for (double& v : target_values) v = rng.uniform();

  std::vector<double> points;
  points.reserve(n * d);
  std::vector<int> label;
  label.reserve(n);
  for (std::size_t t = 0; t < config.k; ++t) {
    for (std::size_t p = 0; p < config.m; ++p) {
      for (std::size_t j = 0; j < d; ++j) {
        const double mu = target_values[t * d + j];
        points.push_back(config.sigma == 0.0 ? mu : rng.normal(mu, config.sigma));
      }
      label.push_back(static_cast<int>(t));
    }
  }
  for (std::size_t p = 0; p < config.noise; ++p) {
    for (std::size_t j = 0; j < d; ++j) points.push_back(rng.uniform());
    label.push_back(kNoise);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
  }

  std::vector<std::string> ids(n);
  std::vector<double> shuffled(n * d);
  std::vector<int> shuffled_label(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = "c" + std::to_string(i);
    std::copy_n(points.begin() + static_cast<std::ptrdiff_t>(order[i] * d), d,
                shuffled.begin() + static_cast<std::ptrdiff_t>(i * d));
    shuffled_label[i] = label[order[i]];
  }
  return SynthInstance{CandidatePool(std::move(ids), std::move(shuffled), d), TargetSet(std::move(target_values), d),
                       std::move(shuffled_label)};
}

}  // namespace gtp
