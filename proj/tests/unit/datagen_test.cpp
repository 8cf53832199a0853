#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "learned_sort/datagen.hpp"
#include "support/oracles.hpp"

namespace ls = learnedsort;

TEST(Generate, RootDupsSixteen) {
  const auto keys = ls::generate_u64(ls::DatasetSpec{ls::Family::root_dups, 16, {}, 0});
  EXPECT_EQ(keys, (std::vector<std::uint64_t>{0, 1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3, 0, 1, 2, 3}));
}

TEST(Generate, TwoDupsEight) {
  const auto keys = ls::generate_u64(ls::DatasetSpec{ls::Family::two_dups, 8, {}, 0});
  EXPECT_EQ(keys, (std::vector<std::uint64_t>{4, 5, 0, 5, 4, 5, 0, 5}));
  EXPECT_DOUBLE_EQ(ls::duplicate_ratio<std::uint64_t>(keys), 0.625);
}

TEST(Generate, ClosedFormsAcrossSizes) {
  for (std::uint64_t n : {1u, 2u, 3u, 15u, 17u, 99u, 1000u, 4097u}) {
    EXPECT_EQ(ls::generate_u64(ls::DatasetSpec{ls::Family::root_dups, n, {}, 0}), oracle::root_dups(n)) << n;
    EXPECT_EQ(ls::generate_u64(ls::DatasetSpec{ls::Family::two_dups, n, {}, 0}), oracle::two_dups(n)) << n;
  }
}

TEST(Generate, DoubleAndIntegerViewsAgree) {
  for (ls::Family family : ls::kAllFamilies) {
    if (!ls::has_integer_keys(family) || family == ls::Family::uniform) continue;
    const ls::DatasetSpec spec{family, 5000, {}, 9};
    const auto d = ls::generate(spec);
    const auto u = ls::generate_u64(spec);
    ASSERT_EQ(d.size(), u.size());
    for (std::size_t i = 0; i < d.size(); ++i) ASSERT_EQ(d[i], static_cast<double>(u[i]));
  }
}

TEST(Generate, DeterministicAndSeedSensitive) {
  for (ls::Family family : ls::kAllFamilies) {
    const ls::DatasetSpec a{family, 2000, {}, 1};
    const ls::DatasetSpec b{family, 2000, {}, 2};
    EXPECT_EQ(ls::generate(a), ls::generate(a)) << ls::family_name(family);
    const bool seeded = family != ls::Family::root_dups && family != ls::Family::two_dups;
    if (seeded) EXPECT_NE(ls::generate(a), ls::generate(b)) << ls::family_name(family);
  }
}

TEST(Generate, EmptyAndSizes) {
  for (ls::Family family : ls::kAllFamilies) {
    EXPECT_TRUE(ls::generate(ls::DatasetSpec{family, 0, {}, 1}).empty());
    EXPECT_EQ(ls::generate(ls::DatasetSpec{family, 123, {}, 1}).size(), 123u);
  }
}

TEST(Generate, DefaultParameterMoments) {
  const std::size_t n = 400'000;
  auto mean_var = [](const std::vector<double>& v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::pair{m, s / v.size()};
  };
  {
    auto [m, v] = mean_var(ls::generate(ls::DatasetSpec{ls::Family::uniform, n, {}, 1}));
    EXPECT_NEAR(m, n / 2.0, n * 0.005);
    EXPECT_NEAR(v, double(n) * n / 12.0, double(n) * n / 12.0 * 0.02);
  }
  {
    auto [m, v] = mean_var(ls::generate(ls::DatasetSpec{ls::Family::normal, n, {}, 1}));
    EXPECT_NEAR(m, 0.0, 0.01);
    EXPECT_NEAR(v, 1.0, 0.02);
  }
  {
    // Lognormal(0, 0.5): mean exp(0.125).
    auto [m, v] = mean_var(ls::generate(ls::DatasetSpec{ls::Family::lognormal, n, {}, 1}));
    EXPECT_NEAR(m, std::exp(0.125), 0.01);
  }
  {
    auto [m, v] = mean_var(ls::generate(ls::DatasetSpec{ls::Family::chi_square, n, {}, 1}));
    EXPECT_NEAR(m, 4.0, 0.05);
    EXPECT_NEAR(v, 8.0, 0.2);
  }
  {
    auto [m, v] = mean_var(ls::generate(ls::DatasetSpec{ls::Family::exponential, n, {}, 1}));
    EXPECT_NEAR(m, 0.5, 0.01);
    EXPECT_NEAR(v, 0.25, 0.01);
  }
}

TEST(Generate, ZipfFrequenciesFollowPowerLaw) {
  const double skew = 1.2;
  const auto keys = ls::generate_u64(ls::DatasetSpec{ls::Family::zipf, 500'000, {{"skew", skew}, {"universe", 1000}}, 3});
  std::vector<double> freq(1001, 0);
  for (auto k : keys) {
    ASSERT_GE(k, 1u);
    ASSERT_LE(k, 1000u);
    ++freq[k];
  }
  double h = 0;
  for (int k = 1; k <= 1000; ++k) h += std::pow(k, -skew);
  for (int k : {1, 2, 3, 5, 10}) {
    const double expected = keys.size() * std::pow(k, -skew) / h;
    EXPECT_NEAR(freq[k], expected, 5 * std::sqrt(expected)) << "rank " << k;
  }
}

TEST(Generate, ZipfDuplicateRatioAtModerateSize) {
  // The ten-million-key anchor lives in the acceptance suite.
  const auto keys = ls::generate(ls::DatasetSpec{ls::Family::zipf, 1'000'000, {{"skew", 0.9}}, 5});
  const double r = ls::duplicate_ratio<double>(keys);
  EXPECT_GT(r, 0.6);
  EXPECT_LT(r, 0.8);
}

TEST(DuplicateRatio, Examples) {
  EXPECT_DOUBLE_EQ(ls::duplicate_ratio<double>(std::vector<double>{1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(ls::duplicate_ratio<double>(std::vector<double>{7, 7, 7, 7}), 0.75);
  EXPECT_DOUBLE_EQ(ls::duplicate_ratio<double>(std::vector<double>{}), 0.0);
  EXPECT_DOUBLE_EQ(ls::duplicate_ratio<double>(std::vector<double>{0.0, -0.0}), 0.5);
}

TEST(DatasetSpec, ParseAndLabel) {
  for (ls::Family family : ls::kAllFamilies) EXPECT_EQ(ls::parse_family(ls::family_name(family)), family);
  try {
    ls::parse_family("gaussian");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "unknown family 'gaussian'");
  }
  const ls::DatasetSpec spec{ls::Family::zipf, 10, {{"skew", 0.99}, {"universe", 50}}, 1};
  EXPECT_EQ(spec.label(), "zipf[skew=0.99;universe=50]");
  EXPECT_EQ(ls::DatasetSpec{ls::Family::normal}.label(), "normal");
}

TEST(DatasetSpec, InvalidParametersAreNamed) {
  auto expect_names = [](ls::DatasetSpec spec, const std::string& name) {
    try {
      ls::generate(spec);
      FAIL() << "accepted " << spec.label();
    } catch (const std::invalid_argument& e) {
      EXPECT_NE(std::string(e.what()).find("'" + name + "'"), std::string::npos) << e.what();
    }
  };
  expect_names({ls::Family::zipf, 10, {{"skew", 0.0}}, 1}, "skew");
  expect_names({ls::Family::zipf, 10, {{"skew", -1.0}}, 1}, "skew");
  expect_names({ls::Family::zipf, 10, {{"universe", 2.5}}, 1}, "universe");
  expect_names({ls::Family::normal, 10, {{"stddev", 0.0}}, 1}, "stddev");
  expect_names({ls::Family::lognormal, 10, {{"sigma", -1.0}}, 1}, "sigma");
  expect_names({ls::Family::chi_square, 10, {{"k", 0.0}}, 1}, "k");
  expect_names({ls::Family::exponential, 10, {{"lambda", 0.0}}, 1}, "lambda");
  expect_names({ls::Family::uniform, 10, {{"min", 5.0}, {"max", 5.0}}, 1}, "max");
  expect_names({ls::Family::mix_gauss, 10, {{"components", 0.0}}, 1}, "components");
  expect_names({ls::Family::normal, 10, {{"skew", 1.0}}, 1}, "skew");
  expect_names({ls::Family::normal, 10, {{"mean", std::nan("")}}, 1}, "mean");
  EXPECT_THROW(ls::generate_u64(ls::DatasetSpec{ls::Family::normal, 10, {}, 1}), std::invalid_argument);
}
