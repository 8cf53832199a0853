#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace learnedsort {

inline constexpr std::size_t kMinSample = 256;
inline constexpr std::size_t kMaxSample = 1'000'000;
inline constexpr std::size_t kDefaultLeafCount = 1000;

// Largest value predict_cdf may return; keeps floor(cdf * f) below f.
inline constexpr double kCdfCeiling = 1.0 - 0x1p-52;

// Sorted keys drawn from an input, promoted to double (the model's domain).
struct TrainingSample {
  std::vector<double> keys;
  std::size_t source_size = 0;
};

// Draws a sorted, position-unbiased sample of clamp(ceil(rate*N), 256, 1e6)
// keys (never more than N). Throws std::invalid_argument on empty input or a
// rate outside (0, 1].
template <typename Key>
TrainingSample draw_sample(std::span<const Key> input, double rate, std::uint64_t seed);

// Two-layer piecewise-linear estimator of the empirical CDF.
//
// The root is a fixed linear map from key to leaf index. Each leaf is a line
// whose output is clamped to [lo, hi]; the clamp windows form the chain
// lo_0 <= hi_0 <= lo_1 <= hi_1 <= ..., so predictions are monotone
// non-decreasing in the key and always lie in [0, 1).
class EcdfModel {
 public:
  struct Leaf {
    double slope = 0.0;
    double intercept = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const Leaf&, const Leaf&) = default;
  };

  EcdfModel() = default;

  // Builds a model from explicit parts. Throws std::invalid_argument if the
  // leaves are empty, a slope is negative or non-finite, or the clamp chain
  // is violated. hi values are capped at kCdfCeiling.
  static EcdfModel from_parts(double root_slope, double root_intercept, std::vector<Leaf> leaves);

  // Model that predicts `cdf` for every key.
  static EcdfModel constant(double cdf);

  double predict_cdf(double x) const noexcept {
    // Infinities are folded onto the largest finite magnitudes so that no
    // 0 * inf can produce a NaN.
    x = std::clamp(x, -std::numeric_limits<double>::max(), std::numeric_limits<double>::max());
    double r = root_slope_ * x + root_intercept_;
    r = std::clamp(r, 0.0, max_leaf_);
    const Leaf& leaf = leaves_[static_cast<std::size_t>(r)];
    return std::clamp(leaf.slope * x + leaf.intercept, leaf.lo, leaf.hi);
  }

  // Level 0: floor(cdf * f). Level 1: floor(cdf * f^2) - parent * f, clamped
  // into [0, f) so model error cannot leave the parent's sub-range.
  std::size_t bucket_index(double x, int level, std::size_t fanout, std::size_t parent) const noexcept {
    const double cdf = predict_cdf(x);
    const double f = static_cast<double>(fanout);
    if (level == 0) {
      return std::min(static_cast<std::size_t>(cdf * f), fanout - 1);
    }
    const double raw = std::floor(cdf * (f * f)) - static_cast<double>(parent) * f;
    return static_cast<std::size_t>(std::clamp(raw, 0.0, f - 1.0));
  }

  double root_slope() const noexcept { return root_slope_; }
  double root_intercept() const noexcept { return root_intercept_; }
  std::span<const Leaf> leaves() const noexcept { return leaves_; }
  std::size_t leaf_count() const noexcept { return leaves_.size(); }

  friend bool operator==(const EcdfModel&, const EcdfModel&) = default;

 private:
  friend EcdfModel train_model(const TrainingSample& sample, std::size_t leaf_count);

  double root_slope_ = 0.0;
  double root_intercept_ = 0.0;
  double max_leaf_ = 0.0;
  std::vector<Leaf> leaves_{Leaf{}};
};

// Trains the two-layer model on a sorted sample. An all-equal sample yields
// a model predicting 0 everywhere. Throws std::invalid_argument on an empty
// or unsorted sample, or leaf_count == 0.
EcdfModel train_model(const TrainingSample& sample, std::size_t leaf_count = kDefaultLeafCount);

}  // namespace learnedsort
