#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace learnedsort {

enum class Family { uniform, normal, lognormal, chi_square, exponential, zipf, mix_gauss, root_dups, two_dups };

inline constexpr Family kAllFamilies[] = {Family::uniform,     Family::normal, Family::lognormal,
                                          Family::chi_square,  Family::exponential, Family::zipf,
                                          Family::mix_gauss,   Family::root_dups,   Family::two_dups};

std::string_view family_name(Family family) noexcept;

// Throws std::invalid_argument("unknown family '<name>'").
Family parse_family(std::string_view name);

// Families whose keys are integers and therefore have a u64 instantiation.
// Uniform is included by flooring its draws.
bool has_integer_keys(Family family) noexcept;

// Parameters per family, with defaults:
//   uniform      min=0, max=n
//   normal       mean=0, stddev=1
//   lognormal    mu=0, sigma=0.5
//   chi_square   k=4
//   exponential  lambda=2
//   zipf         skew=0.9, universe=n
//   mix_gauss    components=5
//   root_dups, two_dups  (none)
struct DatasetSpec {
  Family family = Family::normal;
  std::size_t n = 0;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the offending parameter.
  void validate() const;

  // Short label such as "zipf[skew=0.99]"; never contains a comma.
  std::string label() const;
};

std::vector<double> generate(const DatasetSpec& spec);
std::vector<std::uint64_t> generate_u64(const DatasetSpec& spec);

// 1 - distinct/n, 0 for empty input.
template <typename Key>
double duplicate_ratio(std::span<const Key> keys);

// Zipf ranks in [1, universe] with P(k) proportional to k^-skew, by
// rejection-inversion (Hormann and Derflinger). Works for any skew > 0.
class ZipfSampler {
 public:
  ZipfSampler(std::uint64_t universe, double skew);

  template <typename Rng>
  std::uint64_t operator()(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
      const double u = h_integral_n_ + unit(rng) * (h_integral_x1_ - h_integral_n_);
      const double x = h_integral_inverse(u);
      double k = std::floor(x + 0.5);
      if (k < 1.0) k = 1.0;
      if (k > universe_d_) k = universe_d_;
      if (k - x <= s_ || u >= h_integral(k + 0.5) - h(k)) return static_cast<std::uint64_t>(k);
    }
  }

 private:
  double h(double x) const;
  double h_integral(double x) const;
  double h_integral_inverse(double x) const;

  double skew_;
  double universe_d_;
  double h_integral_x1_;
  double h_integral_n_;
  double s_;
};

}  // namespace learnedsort
