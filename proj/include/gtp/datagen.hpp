#pragma once

#include <cstdint>
#include <vector>

#include "gtp/core.hpp"

namespace gtp {

// Unscrambled Sobol sequence in Gray-code order, 32-bit resolution, using the
// Joe-Kuo direction numbers. The first point is the origin.
class SobolSequence {
 public:
  static constexpr std::size_t kMaxBits = 32;

  explicit SobolSequence(std::size_t dim);

  static std::size_t max_dim();

  std::size_t dim() const noexcept { return dim_; }
  void skip(std::uint64_t count);
  Vector next();

 private:
  std::size_t dim_;
  std::uint64_t index_ = 0;
  std::vector<std::uint32_t> directions_;  // dim x kMaxBits
  std::vector<std::uint32_t> state_;
};

// k copies of the pool mean.
TargetSet targets_mean(const CandidatePool& pool, std::size_t k);
// k distinct pool rows, drawn without replacement.
TargetSet targets_sample(const CandidatePool& pool, std::size_t k, std::uint64_t seed);
// Sobol points skip, skip + 1, ..., skip + k - 1.
TargetSet targets_sobol(std::size_t k, std::size_t dim, std::uint64_t skip = 1);

inline constexpr int kNoise = -1;

struct SynthConfig {
  std::size_t k = 4;
  std::size_t m = 50;      // points per planted team
  std::size_t noise = 0;   // uniform noise points
  std::size_t d = 2;
  double sigma = 0.1;
  std::uint64_t seed = 0;
};

struct SynthInstance {
  CandidatePool pool;
  TargetSet targets;
  std::vector<int> label;  // planted team per candidate, or kNoise
};

// Targets uniform in [0,1]^d; m normal points per target with standard
// deviation sigma (not clipped); `noise` uniform points in [0,1]^d. Candidates
// are shuffled so labels carry no positional signal.
SynthInstance gen_synthetic(const SynthConfig& config);

}  // namespace gtp
