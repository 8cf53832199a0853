#include "learned_sort/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace learnedsort {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::vector<std::string_view> params;
};

const std::vector<FamilyInfo>& family_table() {
  static const std::vector<FamilyInfo> table = {
      {Family::uniform, "uniform", {"min", "max"}},
      {Family::normal, "normal", {"mean", "stddev"}},
      {Family::lognormal, "lognormal", {"mu", "sigma"}},
      {Family::chi_square, "chi_square", {"k"}},
      {Family::exponential, "exponential", {"lambda"}},
      {Family::zipf, "zipf", {"skew", "universe"}},
      {Family::mix_gauss, "mix_gauss", {"components"}},
      {Family::root_dups, "root_dups", {}},
      {Family::two_dups, "two_dups", {}},
  };
  return table;
}

const FamilyInfo& info(Family family) {
  for (const auto& row : family_table()) {
    if (row.family == family) return row;
  }
  throw std::invalid_argument("unknown family");
}

double param(const DatasetSpec& spec, const char* name, double fallback) {
  auto it = spec.params.find(name);
  return it == spec.params.end() ? fallback : it->second;
}

[[noreturn]] void bad_param(std::string_view name, std::string_view why) {
  throw std::invalid_argument("invalid parameter '" + std::string(name) + "': " + std::string(why));
}

__extension__ using u128 = unsigned __int128;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

template <typename Dist>
std::vector<double> draw(std::size_t n, std::uint64_t seed, Dist dist) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = dist(rng);
  return out;
}

std::vector<double> mix_gauss(std::size_t n, std::size_t components, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mean_dist(0.0, 100.0);
  std::uniform_real_distribution<double> sd_dist(0.5, 10.0);
  std::gamma_distribution<double> weight_dist(1.0, 1.0);  // normalised: flat Dirichlet

  std::vector<std::normal_distribution<double>> parts;
  std::vector<double> weights;
  for (std::size_t i = 0; i < components; ++i) {
    const double mean = mean_dist(rng);
    const double sd = sd_dist(rng);
    parts.emplace_back(mean, sd);
    weights.push_back(weight_dist(rng));
  }
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

  std::vector<double> out(n);
  for (auto& x : out) x = parts[pick(rng)](rng);
  return out;
}

std::vector<std::uint64_t> integer_keys(const DatasetSpec& spec) {
  const std::uint64_t n = spec.n;
  std::vector<std::uint64_t> out(spec.n);
  if (n == 0) return out;
  switch (spec.family) {
    case Family::root_dups: {
      const std::uint64_t m = std::max<std::uint64_t>(isqrt(n), 1);
      for (std::uint64_t i = 0; i < n; ++i) out[i] = i % m;
      break;
    }
    case Family::two_dups: {
      for (std::uint64_t i = 0; i < n; ++i) {
        const auto sq = static_cast<u128>(i) * i;
        out[i] = static_cast<std::uint64_t>((sq + n / 2) % n);
      }
      break;
    }
    case Family::zipf: {
      const auto universe = static_cast<std::uint64_t>(param(spec, "universe", static_cast<double>(n)));
      ZipfSampler zipf(universe, param(spec, "skew", 0.9));
      std::mt19937_64 rng(spec.seed);
      for (auto& x : out) x = zipf(rng);
      break;
    }
    case Family::uniform: {
      std::uniform_real_distribution<double> dist(param(spec, "min", 0.0),
                                                  param(spec, "max", static_cast<double>(n)));
      std::mt19937_64 rng(spec.seed);
      for (auto& x : out) x = static_cast<std::uint64_t>(std::floor(dist(rng)));
      break;
    }
    default:
      throw std::invalid_argument("family '" + std::string(family_name(spec.family)) + "' has no integer keys");
  }
  return out;
}

}  // namespace

std::string_view family_name(Family family) noexcept {
  for (const auto& row : family_table()) {
    if (row.family == family) return row.name;
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (const auto& row : family_table()) {
    if (row.name == name) return row.family;
  }
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

bool has_integer_keys(Family family) noexcept {
  return family == Family::uniform || family == Family::zipf || family == Family::root_dups ||
         family == Family::two_dups;
}

void DatasetSpec::validate() const {
  const auto& allowed = info(family).params;
  for (const auto& [name, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      bad_param(name, "not a parameter of family " + std::string(family_name(family)));
    }
    if (!std::isfinite(value)) bad_param(name, "must be finite");
  }
  switch (family) {
    case Family::uniform:
      if (!(param(*this, "min", 0.0) < param(*this, "max", std::max(static_cast<double>(n), 1.0)))) {
        bad_param("max", "must exceed min");
      }
      break;
    case Family::normal:
      if (param(*this, "stddev", 1.0) <= 0.0) bad_param("stddev", "must be positive");
      break;
    case Family::lognormal:
      if (param(*this, "sigma", 0.5) <= 0.0) bad_param("sigma", "must be positive");
      break;
    case Family::chi_square:
      if (param(*this, "k", 4.0) <= 0.0) bad_param("k", "must be positive");
      break;
    case Family::exponential:
      if (param(*this, "lambda", 2.0) <= 0.0) bad_param("lambda", "must be positive");
      break;
    case Family::zipf: {
      if (param(*this, "skew", 0.9) <= 0.0) bad_param("skew", "must be positive");
      const double universe = param(*this, "universe", static_cast<double>(n));
      if (params.count("universe") && (universe < 1.0 || universe != std::floor(universe))) {
        bad_param("universe", "must be a positive integer");
      }
      break;
    }
    case Family::mix_gauss: {
      const double k = param(*this, "components", 5.0);
      if (k < 1.0 || k != std::floor(k)) bad_param("components", "must be a positive integer");
      break;
    }
    case Family::root_dups:
    case Family::two_dups:
      break;
  }
}

std::string DatasetSpec::label() const {
  std::string out(family_name(family));
  if (params.empty()) return out;
  out += '[';
  bool first = true;
  for (const auto& [name, value] : params) {
    if (!first) out += ';';
    first = false;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%g", name.c_str(), value);
    out += buf;
  }
  out += ']';
  return out;
}

std::vector<double> generate(const DatasetSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  switch (spec.family) {
    case Family::uniform:
      return draw(n, spec.seed,
                  std::uniform_real_distribution<double>(param(spec, "min", 0.0),
                                                         param(spec, "max", std::max(static_cast<double>(n), 1.0))));
    case Family::normal:
      return draw(n, spec.seed,
                  std::normal_distribution<double>(param(spec, "mean", 0.0), param(spec, "stddev", 1.0)));
    case Family::lognormal:
      return draw(n, spec.seed,
                  std::lognormal_distribution<double>(param(spec, "mu", 0.0), param(spec, "sigma", 0.5)));
    case Family::chi_square:
      return draw(n, spec.seed, std::chi_squared_distribution<double>(param(spec, "k", 4.0)));
    case Family::exponential:
      return draw(n, spec.seed, std::exponential_distribution<double>(param(spec, "lambda", 2.0)));
    case Family::mix_gauss:
      return mix_gauss(n, static_cast<std::size_t>(param(spec, "components", 5.0)), spec.seed);
    case Family::zipf:
    case Family::root_dups:
    case Family::two_dups: {
      const auto ints = integer_keys(spec);
      return {ints.begin(), ints.end()};
    }
  }
  return {};
}

std::vector<std::uint64_t> generate_u64(const DatasetSpec& spec) {
  spec.validate();
  return integer_keys(spec);
}

template <typename Key>
double duplicate_ratio(std::span<const Key> keys) {
  if (keys.empty()) return 0.0;
  std::vector<Key> copy(keys.begin(), keys.end());
  std::sort(copy.begin(), copy.end());
  const auto distinct =
      static_cast<std::size_t>(std::unique(copy.begin(), copy.end(), [](Key a, Key b) { return a == b; }) -
                               copy.begin());
  return 1.0 - static_cast<double>(distinct) / static_cast<double>(keys.size());
}

template double duplicate_ratio<double>(std::span<const double>);
template double duplicate_ratio<std::uint64_t>(std::span<const std::uint64_t>);

namespace {

// log1p(x)/x and expm1(x)/x, with series near zero.
double helper1(double x) {
  return std::abs(x) > 1e-8 ? std::log1p(x) / x : 1.0 - x * (0.5 - x * (1.0 / 3.0 - 0.25 * x));
}
double helper2(double x) {
  return std::abs(x) > 1e-8 ? std::expm1(x) / x : 1.0 + x * 0.5 * (1.0 + x * (1.0 / 3.0) * (1.0 + 0.25 * x));
}

}  // namespace

ZipfSampler::ZipfSampler(std::uint64_t universe, double skew)
    : skew_(skew), universe_d_(static_cast<double>(universe)) {
  if (universe == 0) bad_param("universe", "must be a positive integer");
  if (!(skew > 0.0)) bad_param("skew", "must be positive");
  h_integral_x1_ = h_integral(1.5) - 1.0;
  h_integral_n_ = h_integral(universe_d_ + 0.5);
  s_ = 2.0 - h_integral_inverse(h_integral(2.5) - h(2.0));
}

double ZipfSampler::h(double x) const { return std::exp(-skew_ * std::log(x)); }

double ZipfSampler::h_integral(double x) const {
  const double log_x = std::log(x);
  return helper2((1.0 - skew_) * log_x) * log_x;
}

double ZipfSampler::h_integral_inverse(double x) const {
  double t = x * (1.0 - skew_);
  if (t < -1.0) t = -1.0;
  return std::exp(helper1(t) * x);
}

}  // namespace learnedsort
