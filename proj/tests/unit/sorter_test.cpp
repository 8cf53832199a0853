#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "learned_sort/datagen.hpp"
#include "learned_sort/partition.hpp"
#include "learned_sort/sorter.hpp"
#include "support/oracles.hpp"

namespace ls = learnedsort;

namespace {

// Small fanout and capacity so modest inputs exercise every path.
ls::SortConfig tight_config() {
  ls::SortConfig cfg;
  cfg.fanout = 16;
  cfg.fragment_capacity = 4;
  cfg.leaf_count = 32;
  cfg.fallback_threshold = 0;
  cfg.sample_rate = 0.1;
  return cfg;
}

template <typename Key>
void expect_sorts(std::vector<Key> keys, const ls::SortConfig& cfg) {
  const auto expected = oracle::sorted_copy(keys);
  ls::learned_sort(std::span<Key>(keys), cfg);
  ASSERT_EQ(keys, expected);
}

}  // namespace

TEST(LearnedSort, TwoDupsEightKeys) {
  std::vector<std::uint64_t> keys{4, 5, 0, 5, 4, 5, 0, 5};
  ls::learned_sort(keys);
  EXPECT_EQ(keys, (std::vector<std::uint64_t>{0, 0, 4, 4, 5, 5, 5, 5}));

  std::vector<std::uint64_t> again{4, 5, 0, 5, 4, 5, 0, 5};
  auto cfg = tight_config();
  cfg.fanout = 2;
  cfg.fragment_capacity = 2;
  ls::learned_sort(again, cfg);
  EXPECT_EQ(again, (std::vector<std::uint64_t>{0, 0, 4, 4, 5, 5, 5, 5}));
}

TEST(LearnedSort, EmptyAndSingle) {
  std::vector<double> empty;
  const auto stats = ls::learned_sort(empty);
  EXPECT_TRUE(empty.empty());
  EXPECT_FALSE(stats.trained);
  EXPECT_FALSE(stats.used_fallback);
  EXPECT_EQ(stats.training_sample_keys, 0u);
  EXPECT_EQ(stats.counting_sort_invocations, 0u);
  EXPECT_EQ(stats.peak_aux_keys, 0u);

  std::vector<double> one{3.5};
  ls::learned_sort(one, tight_config());
  EXPECT_EQ(one, std::vector<double>{3.5});
}

TEST(LearnedSort, NanIsRejectedBeforeMutation) {
  std::vector<double> keys(10'000);
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = static_cast<double>(keys.size() - i);
  keys[5000] = std::nan("");
  const auto before = keys;
  try {
    ls::learned_sort(keys);
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "unordered key");
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i != 5000) ASSERT_EQ(keys[i], before[i]);
  }
  EXPECT_TRUE(std::isnan(keys[5000]));
}

TEST(LearnedSort, FallbackBelowThreshold) {
  auto keys = oracle::make_doubles(oracle::Shape::uniform, 5000, 1);
  const auto stats = ls::learned_sort(keys);
  EXPECT_TRUE(stats.used_fallback);
  EXPECT_FALSE(stats.trained);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));

  auto more = oracle::make_doubles(oracle::Shape::uniform, 5001, 1);
  const auto trained = ls::learned_sort(more);
  EXPECT_FALSE(trained.used_fallback);
  EXPECT_TRUE(trained.trained);
  EXPECT_EQ(trained.training_sample_keys, ls::kMinSample);
}

TEST(LearnedSort, ConfigValidation) {
  std::vector<double> keys{2, 1};
  auto bad = [&](auto edit) {
    ls::SortConfig cfg;
    edit(cfg);
    EXPECT_THROW(ls::learned_sort(keys, cfg), std::invalid_argument);
  };
  bad([](ls::SortConfig& c) { c.fanout = 1; });
  bad([](ls::SortConfig& c) { c.fanout = std::size_t{1} << 27; });
  bad([](ls::SortConfig& c) { c.fragment_capacity = 0; });
  bad([](ls::SortConfig& c) { c.sample_rate = 0.0; });
  bad([](ls::SortConfig& c) { c.sample_rate = 1.01; });
  bad([](ls::SortConfig& c) { c.leaf_count = 0; });
}

TEST(LearnedSort, EveryFamilyFiveSeeds) {
  for (ls::Family family : ls::kAllFamilies) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const ls::DatasetSpec spec{family, 100'000, {}, seed};
      auto keys = ls::generate(spec);
      const auto expected = oracle::sorted_copy(keys);
      ls::learned_sort(keys);
      ASSERT_EQ(keys, expected) << spec.label() << " seed " << seed;
      if (ls::has_integer_keys(family)) {
        auto ints = ls::generate_u64(spec);
        const auto expected_ints = oracle::sorted_copy(ints);
        ls::learned_sort(ints);
        ASSERT_EQ(ints, expected_ints) << spec.label() << " u64 seed " << seed;
      }
    }
  }
}

TEST(LearnedSort, LognormalMillionDisplacement) {
  auto keys = ls::generate(ls::DatasetSpec{ls::Family::lognormal, 1'000'000, {}, 8});
  const auto expected = oracle::sorted_copy(keys);
  const auto stats = ls::learned_sort(keys);
  EXPECT_EQ(keys, expected);
  // Observed diagnostic, not a guarantee.
  RecordProperty("insertion_sort_displacement_max", std::to_string(stats.insertion_sort_displacement_max));
  std::printf("lognormal 1e6 displacement max: %zu\n", stats.insertion_sort_displacement_max);
}

TEST(LearnedSort, DeterministicOutputAndStats) {
  const auto keys = ls::generate(ls::DatasetSpec{ls::Family::zipf, 200'000, {}, 4});
  auto a = keys;
  auto b = keys;
  ls::SortConfig cfg;
  cfg.record_trace = true;
  const auto sa = ls::learned_sort(a, cfg);
  const auto sb = ls::learned_sort(b, cfg);
  EXPECT_EQ(a, b);
  EXPECT_EQ(sa.training_sample_keys, sb.training_sample_keys);
  EXPECT_EQ(sa.buckets_skipped_homogeneous, sb.buckets_skipped_homogeneous);
  EXPECT_EQ(sa.sub_buckets_skipped_homogeneous, sb.sub_buckets_skipped_homogeneous);
  EXPECT_EQ(sa.counting_sort_invocations, sb.counting_sort_invocations);
  EXPECT_EQ(sa.max_counting_sort_size, sb.max_counting_sort_size);
  EXPECT_EQ(sa.insertion_sort_displacement_max, sb.insertion_sort_displacement_max);
  EXPECT_EQ(sa.peak_aux_keys, sb.peak_aux_keys);
  EXPECT_EQ(sa.peak_fragment_descriptors, sb.peak_fragment_descriptors);
  EXPECT_EQ(sa.skipped_ranges, sb.skipped_ranges);
}

TEST(LearnedSort, HomogeneousSkipsAreInFinalPosition) {
  for (ls::Family family : {ls::Family::root_dups, ls::Family::two_dups, ls::Family::zipf}) {
    const auto input = ls::generate(ls::DatasetSpec{family, 300'000, {}, 2});
    const auto expected = oracle::sorted_copy(input);
    ls::SortConfig cfg;
    cfg.record_trace = true;
    auto keys = input;
    const auto stats = ls::learned_sort(keys, cfg);
    ASSERT_EQ(keys, expected);
    EXPECT_EQ(stats.skipped_ranges.size(), stats.buckets_skipped_homogeneous);

    // Replay both partition levels with the same model, without counting or
    // insertion sort, and check each skipped range in that state.
    const auto model = ls::train_model(ls::draw_sample<double>(input, cfg.sample_rate, cfg.seed), cfg.leaf_count);
    auto staged = input;
    ls::FragmentPool<double> pool(cfg.fanout, cfg.fragment_capacity);
    std::vector<double> spare(cfg.fragment_capacity);
    const auto r = ls::partition_pass<double>(staged, model, 0, 0, cfg.fanout, pool);
    const auto starts = ls::defragment<double>(staged, r, pool.storage(), spare);
    for (std::size_t i = 0; i < cfg.fanout; ++i) {
      std::span<double> bucket(staged.data() + starts[i], r.bucket_sizes[i]);
      if (bucket.size() < 2 || ls::is_homogeneous<double>(bucket)) continue;
      const auto sub = ls::partition_pass<double>(bucket, model, 1, i, cfg.fanout, pool);
      ls::defragment<double>(bucket, sub, pool.storage(), spare);
    }
    for (const auto& s : stats.skipped_ranges) {
      ASSERT_GE(s.size, 2u);
      for (std::size_t k = s.offset; k < s.offset + s.size; ++k) ASSERT_EQ(staged[k], expected[k]);
    }
  }
}

// Property: arbitrary shapes and configurations, both key types.
TEST(SortProperty, ShapesAndConfigs) {
  std::uint64_t seed = 100;
  const std::pair<std::size_t, std::size_t> shapes_fc[] = {{2, 1}, {3, 2}, {16, 4}, {257, 9}, {1000, 100}};
  for (oracle::Shape shape : oracle::kShapes) {
    for (std::size_t n : {2u, 3u, 50u, 999u, 20'000u}) {
      for (auto [f, c] : shapes_fc) {
        ++seed;
        auto cfg = tight_config();
        cfg.fanout = f;
        cfg.fragment_capacity = c;
        cfg.seed = seed;
        cfg.leaf_count = 1 + seed % 200;
        expect_sorts(oracle::make_doubles(shape, n, seed), cfg);
        expect_sorts(oracle::make_u64(shape, n, seed), cfg);
        if (HasFatalFailure()) return;
      }
    }
  }
}

TEST(SortProperty, ConstantModelStillSorts) {
  for (double cdf : {0.0, 0.3, 0.999, 1.0}) {
    for (oracle::Shape shape : oracle::kShapes) {
      auto keys = oracle::make_doubles(shape, 3000, 5);
      const auto expected = oracle::sorted_copy(keys);
      ls::learned_sort_with_model(keys, ls::EcdfModel::constant(cdf), tight_config());
      ASSERT_EQ(keys, expected);
    }
  }
}

TEST(SortProperty, AdversarialModelStillSorts) {
  // Trained on one distribution, applied to a very different one.
  auto other = ls::generate(ls::DatasetSpec{ls::Family::exponential, 10'000, {}, 1});
  const auto model = ls::train_model(ls::draw_sample<double>(other, 0.1, 1), 50);
  auto keys = oracle::make_doubles(oracle::Shape::heavy_tail, 40'000, 2);
  const auto expected = oracle::sorted_copy(keys);
  ls::learned_sort_with_model(keys, model, tight_config());
  EXPECT_EQ(keys, expected);
}

TEST(IsHomogeneous, Examples) {
  EXPECT_TRUE(ls::is_homogeneous<int>(std::vector<int>{7, 7, 7}));
  EXPECT_FALSE(ls::is_homogeneous<int>(std::vector<int>{7, 7, 8}));
  EXPECT_TRUE(ls::is_homogeneous<int>(std::vector<int>{}));
  EXPECT_TRUE(ls::is_homogeneous<double>(std::vector<double>{0.0, -0.0}));
}

TEST(CountingSort, HandComputedThreeKeys) {
  // cdf(x) = x; f = 10, i = 5, j = 0 gives adj = 0.5; with total_n = 100
  // the slots are floor((x - 0.5) * 100) = 2, 0, 1.
  const auto model = ls::EcdfModel::from_parts(0, 0, {ls::EcdfModel::Leaf{1, 0, 0, 1}});
  std::vector<double> range{0.52, 0.50, 0.51};
  std::vector<double> scratch(3);
  std::vector<std::size_t> counts(3);
  ls::counting_sort_bucket<double>(range, model, 5, 0, 10, 100, scratch, counts);
  EXPECT_EQ(range, (std::vector<double>{0.50, 0.51, 0.52}));
}

TEST(CountingSort, AllEqualKeysUnchanged) {
  const auto model = ls::EcdfModel::constant(0.25);
  std::vector<double> range(20, 1.5);
  std::vector<double> scratch(20);
  std::vector<std::size_t> counts(20);
  ls::counting_sort_bucket<double>(range, model, 2, 5, 10, 1000, scratch, counts);
  EXPECT_EQ(range, std::vector<double>(20, 1.5));
}

TEST(CountingSort, RandomThousandThenInsertion) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.37, 0.38);
  std::vector<double> range(1000);
  for (auto& x : range) x = u(rng);
  const auto expected = oracle::sorted_copy(range);
  const auto model = ls::EcdfModel::from_parts(0, 0, {ls::EcdfModel::Leaf{1, 0, 0, 1}});
  std::vector<double> scratch(1000);
  std::vector<std::size_t> counts(1000);
  ls::counting_sort_bucket<double>(range, model, 3, 7, 10, 100'000, scratch, counts);
  EXPECT_EQ(oracle::sorted_copy(range), expected);
  ls::insertion_sort_cleanup<double>(range);
  EXPECT_EQ(range, expected);
}

TEST(CountingSort, BuffersTooSmall) {
  const auto model = ls::EcdfModel::constant(0.5);
  std::vector<double> range{3, 2, 1};
  std::vector<double> scratch(2);
  std::vector<std::size_t> counts(3);
  EXPECT_THROW(ls::counting_sort_bucket<double>(range, model, 0, 0, 2, 3, scratch, counts), std::invalid_argument);
}

TEST(InsertionSort, Examples) {
  std::vector<int> a{1, 2, 3};
  EXPECT_EQ(ls::insertion_sort_cleanup<int>(a), 0u);
  EXPECT_EQ(a, (std::vector<int>{1, 2, 3}));
  std::vector<int> b{2, 1};
  EXPECT_EQ(ls::insertion_sort_cleanup<int>(b), 1u);
  EXPECT_EQ(b, (std::vector<int>{1, 2}));
  std::vector<int> c{5, 4, 3, 2, 1};
  EXPECT_EQ(ls::insertion_sort_cleanup<int>(c), 4u);
}

TEST(MemoryAccounting, PeakWithinBound) {
  auto keys = ls::generate(ls::DatasetSpec{ls::Family::chi_square, 500'000, {}, 3});
  const ls::SortConfig cfg;
  const auto stats = ls::learned_sort(keys, cfg);
  const std::size_t f = cfg.fanout, c = cfg.fragment_capacity;
  EXPECT_LE(stats.peak_aux_keys, f * c + c + stats.max_counting_sort_size);
  EXPECT_GE(stats.peak_aux_keys, f * c + c);
  EXPECT_LE(stats.peak_fragment_descriptors, keys.size() / c + 2 * f);
}
