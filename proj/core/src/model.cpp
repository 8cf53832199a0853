#include "learned_sort/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace learnedsort {

namespace {

// Enforces lo_0 <= hi_0 <= lo_1 <= hi_1 <= ... and the [0, 1) range.
void enforce_clamp_chain(std::vector<EcdfModel::Leaf>& leaves) {
  double running = 0.0;
  for (auto& leaf : leaves) {
    leaf.lo = std::min(std::max(leaf.lo, running), kCdfCeiling);
    leaf.hi = std::min(std::max(leaf.hi, leaf.lo), kCdfCeiling);
    running = leaf.hi;
  }
}

}  // namespace

template <typename Key>
TrainingSample draw_sample(std::span<const Key> input, double rate, std::uint64_t seed) {
  if (input.empty()) throw std::invalid_argument("empty input");
  if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("invalid sample rate");

  const std::size_t n = input.size();
  auto wanted = static_cast<std::size_t>(std::ceil(rate * static_cast<double>(n)));
  wanted = std::min(std::clamp(wanted, kMinSample, kMaxSample), n);

  TrainingSample sample;
  sample.source_size = n;
  sample.keys.reserve(wanted);
  if (wanted == n) {
    for (const Key& k : input) sample.keys.push_back(static_cast<double>(k));
  } else {
    // One uniform pick per equal-width stratum: every position has the same
    // inclusion probability and no index is drawn twice.
    std::mt19937_64 rng(seed);
    for (std::size_t j = 0; j < wanted; ++j) {
      const std::size_t lo = j * n / wanted;
      const std::size_t hi = (j + 1) * n / wanted;
      std::uniform_int_distribution<std::size_t> pick(lo, hi - 1);
      sample.keys.push_back(static_cast<double>(input[pick(rng)]));
    }
  }
  std::sort(sample.keys.begin(), sample.keys.end());
  return sample;
}

template TrainingSample draw_sample<double>(std::span<const double>, double, std::uint64_t);
template TrainingSample draw_sample<std::uint64_t>(std::span<const std::uint64_t>, double, std::uint64_t);

EcdfModel EcdfModel::from_parts(double root_slope, double root_intercept, std::vector<Leaf> leaves) {
  if (leaves.empty()) throw std::invalid_argument("model needs at least one leaf");
  if (!std::isfinite(root_slope) || !std::isfinite(root_intercept) || root_slope < 0.0) {
    throw std::invalid_argument("invalid root coefficients");
  }
  double prev_hi = 0.0;
  for (auto& leaf : leaves) {
    if (!std::isfinite(leaf.slope) || !std::isfinite(leaf.intercept) || leaf.slope < 0.0) {
      throw std::invalid_argument("invalid leaf coefficients");
    }
    leaf.hi = std::min(leaf.hi, kCdfCeiling);
    leaf.lo = std::min(leaf.lo, kCdfCeiling);
    if (!(leaf.lo >= prev_hi && leaf.lo <= leaf.hi)) {
      throw std::invalid_argument("leaf clamps must form a non-decreasing chain in [0, 1)");
    }
    prev_hi = leaf.hi;
  }
  EcdfModel m;
  m.root_slope_ = root_slope;
  m.root_intercept_ = root_intercept;
  m.max_leaf_ = static_cast<double>(leaves.size() - 1);
  m.leaves_ = std::move(leaves);
  return m;
}

EcdfModel EcdfModel::constant(double cdf) {
  const double c = std::clamp(cdf, 0.0, kCdfCeiling);
  return from_parts(0.0, 0.0, {Leaf{0.0, c, c, c}});
}

EcdfModel train_model(const TrainingSample& sample, std::size_t leaf_count) {
  const auto& keys = sample.keys;
  if (keys.empty()) throw std::invalid_argument("empty sample");
  if (leaf_count == 0) throw std::invalid_argument("leaf_count must be positive");
  if (std::any_of(keys.begin(), keys.end(), [](double k) { return std::isnan(k); })) {
    throw std::invalid_argument("unordered key");
  }
  if (!std::is_sorted(keys.begin(), keys.end())) throw std::invalid_argument("sample must be sorted");

  const std::size_t n = keys.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  // Infinite keys take part in ranks but not in the fit.
  std::size_t first_finite = 0;
  while (first_finite < n && !std::isfinite(keys[first_finite])) ++first_finite;
  std::size_t end_finite = n;
  while (end_finite > first_finite && !std::isfinite(keys[end_finite - 1])) --end_finite;

  EcdfModel m;
  m.leaves_.assign(leaf_count, EcdfModel::Leaf{});
  m.max_leaf_ = static_cast<double>(leaf_count - 1);
  if (end_finite - first_finite < 2 || keys[first_finite] == keys[end_finite - 1]) {
    return m;  // degenerate: constant 0
  }

  const double kmin = keys[first_finite];
  const double kmax = keys[end_finite - 1];
  const double leaves_d = static_cast<double>(leaf_count);
  const double span = kmax - kmin;
  const double slope = std::isfinite(span) ? leaves_d / span : (leaves_d / 2) / (kmax / 2 - kmin / 2);
  if (!std::isfinite(slope) || !std::isfinite(kmin * slope)) {
    return m;  // span too narrow to scale (subnormal keys): constant 0
  }
  m.root_slope_ = slope;
  m.root_intercept_ = -kmin * slope;
  auto route = [&](double x) {
    const double r = std::clamp(m.root_slope_ * x + m.root_intercept_, 0.0, m.max_leaf_);
    return static_cast<std::size_t>(r);
  };

  // Empirical CDF (fraction of sample keys strictly below) for every index.
  std::vector<double> ecdf(n);
  for (std::size_t i = 0; i < n; ++i) {
    ecdf[i] = (i > 0 && keys[i] == keys[i - 1]) ? ecdf[i - 1] : static_cast<double>(i) * inv_n;
  }

  std::vector<bool> populated(leaf_count, false);
  std::size_t s = first_finite;
  while (s < end_finite) {
    const std::size_t leaf_id = route(keys[s]);
    std::size_t e = s + 1;
    while (e < end_finite && route(keys[e]) == leaf_id) ++e;

    auto& leaf = m.leaves_[leaf_id];
    populated[leaf_id] = true;
    const double first = keys[s];
    const double last = keys[e - 1];
    leaf.lo = ecdf[s];
    leaf.hi = ecdf[e - 1];

    if (first == last) {
      leaf.slope = 0.0;
      leaf.intercept = leaf.lo;
    } else {
      const double count = static_cast<double>(e - s);
      double xm = 0.0;
      double ym = 0.0;
      for (std::size_t i = s; i < e; ++i) {
        xm += keys[i];
        ym += ecdf[i];
      }
      xm /= count;
      ym /= count;
      double sxx = 0.0;
      double sxy = 0.0;
      for (std::size_t i = s; i < e; ++i) {
        const double dx = keys[i] - xm;
        sxx += dx * dx;
        sxy += dx * (ecdf[i] - ym);
      }
      double slope = sxy / sxx;
      double intercept = ym - slope * xm;
      // A least-squares line that leaves the clamp window at either end would
      // collapse distinct keys onto the clamp value; interpolate the window
      // endpoints instead.
      const bool fits = std::isfinite(slope) && std::isfinite(intercept) && slope >= 0.0 &&
                        slope * first + intercept >= leaf.lo && slope * last + intercept <= leaf.hi;
      if (!fits) {
        slope = (leaf.hi - leaf.lo) / (last - first);
        intercept = leaf.lo - slope * first;
        if (!std::isfinite(slope) || !std::isfinite(intercept)) {
          slope = 0.0;
          intercept = leaf.lo;
        }
      }
      leaf.slope = slope;
      leaf.intercept = intercept;
    }
    s = e;
  }

  // Runs of empty leaves interpolate between their neighbours' boundaries.
  // Leaf 0 and the last leaf always hold the extreme keys.
  std::size_t i = 0;
  while (i < leaf_count) {
    if (populated[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < leaf_count && !populated[j]) ++j;
    const double y_left = i > 0 ? m.leaves_[i - 1].hi : 0.0;
    const double y_right = j < leaf_count ? m.leaves_[j].lo : y_left;
    const double x_left = (static_cast<double>(i) - m.root_intercept_) / m.root_slope_;
    const double x_right = (static_cast<double>(j) - m.root_intercept_) / m.root_slope_;
    double slope = (y_right - y_left) / (x_right - x_left);
    if (!std::isfinite(slope) || slope < 0.0) slope = 0.0;
    const double intercept = y_left - slope * x_left;
    for (std::size_t k = i; k < j; ++k) {
      auto& leaf = m.leaves_[k];
      const double edge_lo = (static_cast<double>(k) - m.root_intercept_) / m.root_slope_;
      const double edge_hi = (static_cast<double>(k + 1) - m.root_intercept_) / m.root_slope_;
      leaf.slope = slope;
      leaf.intercept = std::isfinite(intercept) ? intercept : y_left;
      leaf.lo = std::clamp(slope * edge_lo + leaf.intercept, y_left, y_right);
      leaf.hi = std::clamp(slope * edge_hi + leaf.intercept, y_left, y_right);
    }
    i = j;
  }

  enforce_clamp_chain(m.leaves_);
  return m;
}

}  // namespace learnedsort
