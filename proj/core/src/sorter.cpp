#include "learned_sort/sorter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "learned_sort/aux_memory.hpp"
#include "learned_sort/partition.hpp"

namespace learnedsort {

void SortConfig::validate() const {
  if (fanout < 2) throw std::invalid_argument("fanout must be at least 2");
  // f^2 must be exact in a double and bucket ids fit the descriptor field.
  if (fanout > (std::size_t{1} << 26)) throw std::invalid_argument("fanout too large");
  if (fragment_capacity < 1) throw std::invalid_argument("fragment_capacity must be at least 1");
  if (!(sample_rate > 0.0 && sample_rate <= 1.0)) throw std::invalid_argument("invalid sample rate");
  if (leaf_count < 1) throw std::invalid_argument("leaf_count must be at least 1");
}

template <typename Key>
void counting_sort_bucket(std::span<Key> range, const EcdfModel& model, std::size_t i, std::size_t j,
                          std::size_t fanout, std::size_t total_n, std::span<Key> scratch,
                          std::span<std::size_t> counts) {
  const std::size_t n = range.size();
  if (n < 2) return;
  if (scratch.size() < n || counts.size() < n) throw std::invalid_argument("counting sort buffers too small");

  const double f = static_cast<double>(fanout);
  const double adj = static_cast<double>(i * fanout + j) / (f * f);
  const double scale = static_cast<double>(total_n);
  const double last_slot = static_cast<double>(n - 1);
  auto slot = [&](Key x) {
    const double pos = std::floor((model.predict_cdf(static_cast<double>(x)) - adj) * scale);
    return static_cast<std::size_t>(std::clamp(pos, 0.0, last_slot));
  };

  std::fill_n(counts.begin(), n, std::size_t{0});
  for (const Key& x : range) ++counts[slot(x)];
  for (std::size_t k = 1; k < n; ++k) counts[k] += counts[k - 1];
  for (const Key& x : range) scratch[--counts[slot(x)]] = x;
  std::copy_n(scratch.begin(), n, range.begin());
}

namespace {

using Clock = std::chrono::steady_clock;

template <typename Key>
void reject_unordered(std::span<const Key> keys) {
  if constexpr (std::is_floating_point_v<Key>) {
    if (std::any_of(keys.begin(), keys.end(), [](Key k) { return std::isnan(k); })) {
      throw std::invalid_argument("unordered key");
    }
  }
}

template <typename Key>
void run_pipeline(std::span<Key> keys, const EcdfModel& model, const SortConfig& cfg, SortStats& stats) {
  const std::size_t f = cfg.fanout;
  const std::size_t c = cfg.fragment_capacity;
  const std::size_t n = keys.size();

  AuxMeter meter;
  FragmentPool<Key> pool(f, c, &meter);
  MeteredBuffer<Key> spare(c, &meter);
  MeteredBuffer<Key> counting_keys(0, &meter);
  std::vector<std::size_t> counts;

  auto t0 = Clock::now();
  PartitionResult top = partition_pass(keys, model, 0, 0, f, pool);
  stats.peak_fragment_descriptors = top.fragment_log.size();
  const std::vector<std::size_t> starts = defragment(keys, top, pool.storage(), spare.span());
  std::vector<FragmentDescriptor>().swap(top.fragment_log);
  auto t1 = Clock::now();
  stats.partition_time = t1 - t0;

  for (std::size_t i = 0; i < f; ++i) {
    const std::size_t bucket_size = top.bucket_sizes[i];
    if (bucket_size < 2) continue;
    std::span<Key> bucket = keys.subspan(starts[i], bucket_size);
    if (is_homogeneous<Key>(bucket)) {
      ++stats.buckets_skipped_homogeneous;
      if (cfg.record_trace) stats.skipped_ranges.push_back({0, starts[i], bucket_size});
      continue;
    }

    const PartitionResult sub = partition_pass(bucket, model, 1, i, f, pool);
    stats.peak_fragment_descriptors = std::max(stats.peak_fragment_descriptors, sub.fragment_log.size());
    const std::vector<std::size_t> sub_starts = defragment(bucket, sub, pool.storage(), spare.span());

    for (std::size_t j = 0; j < f; ++j) {
      const std::size_t m = sub.bucket_sizes[j];
      if (m < 2) continue;
      std::span<Key> range = bucket.subspan(sub_starts[j], m);
      if (is_homogeneous<Key>(range)) {
        ++stats.buckets_skipped_homogeneous;
        ++stats.sub_buckets_skipped_homogeneous;
        if (cfg.record_trace) stats.skipped_ranges.push_back({1, starts[i] + sub_starts[j], m});
        continue;
      }
      counting_keys.ensure(m);
      if (counts.size() < m) counts.resize(m);
      counting_sort_bucket(range, model, i, j, f, n, counting_keys.first(m), std::span(counts).first(m));
      ++stats.counting_sort_invocations;
      stats.max_counting_sort_size = std::max(stats.max_counting_sort_size, m);
    }
  }
  auto t2 = Clock::now();
  stats.refinement_time = t2 - t1;

  stats.insertion_sort_displacement_max = insertion_sort_cleanup(keys);
  stats.touch_up_time = Clock::now() - t2;
  stats.peak_aux_keys = meter.peak;
}

template <typename Key>
SortStats sort_with_model(std::span<Key> keys, const EcdfModel& model, const SortConfig& cfg) {
  cfg.validate();
  reject_unordered<Key>(keys);
  SortStats stats;
  if (keys.size() < 2) return stats;
  const auto start = Clock::now();
  run_pipeline(keys, model, cfg, stats);
  stats.total_time = Clock::now() - start;
  return stats;
}

template <typename Key>
SortStats sort_keys(std::span<Key> keys, const SortConfig& cfg) {
  cfg.validate();
  reject_unordered<Key>(keys);
  SortStats stats;
  if (keys.size() < 2) return stats;

  const auto start = Clock::now();
  if (keys.size() <= cfg.fallback_threshold) {
    std::sort(keys.begin(), keys.end());
    stats.used_fallback = true;
    stats.total_time = Clock::now() - start;
    return stats;
  }

  EcdfModel model;
  {
    TrainingSample sample = draw_sample<Key>(keys, cfg.sample_rate, cfg.seed);
    stats.training_sample_keys = sample.keys.size();
    model = train_model(sample, cfg.leaf_count);
  }
  stats.trained = true;
  stats.training_time = Clock::now() - start;

  run_pipeline(keys, model, cfg, stats);
  stats.total_time = Clock::now() - start;
  return stats;
}

}  // namespace

SortStats learned_sort(std::span<double> keys, const SortConfig& config) { return sort_keys(keys, config); }
SortStats learned_sort(std::span<std::uint64_t> keys, const SortConfig& config) { return sort_keys(keys, config); }

SortStats learned_sort_with_model(std::span<double> keys, const EcdfModel& model, const SortConfig& config) {
  return sort_with_model(keys, model, config);
}
SortStats learned_sort_with_model(std::span<std::uint64_t> keys, const EcdfModel& model, const SortConfig& config) {
  return sort_with_model(keys, model, config);
}

template void counting_sort_bucket<double>(std::span<double>, const EcdfModel&, std::size_t, std::size_t,
                                           std::size_t, std::size_t, std::span<double>, std::span<std::size_t>);
template void counting_sort_bucket<std::uint64_t>(std::span<std::uint64_t>, const EcdfModel&, std::size_t,
                                                  std::size_t, std::size_t, std::size_t, std::span<std::uint64_t>,
                                                  std::span<std::size_t>);

}  // namespace learnedsort
