#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "learned_sort/model.hpp"

namespace learnedsort {

struct SortConfig {
  std::size_t fanout = 1000;            // f
  std::size_t fragment_capacity = 100;  // c
  double sample_rate = 0.01;
  std::size_t leaf_count = kDefaultLeafCount;
  std::size_t fallback_threshold = 5000;  // inputs this small go to std::sort
  std::uint64_t seed = 0x5eed;            // sampling seed
  bool record_trace = false;              // fill SortStats::skipped_ranges

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct SkippedRange {
  int level = 0;
  std::size_t offset = 0;
  std::size_t size = 0;

  friend bool operator==(const SkippedRange&, const SkippedRange&) = default;
};

struct SortStats {
  using Duration = std::chrono::nanoseconds;

  bool trained = false;
  bool used_fallback = false;
  std::size_t training_sample_keys = 0;
  std::size_t buckets_skipped_homogeneous = 0;      // all-equal ranges of >= 2 keys, both levels
  std::size_t sub_buckets_skipped_homogeneous = 0;  // the level-1 share of the above
  std::size_t counting_sort_invocations = 0;
  std::size_t max_counting_sort_size = 0;
  std::size_t insertion_sort_displacement_max = 0;

  // Auxiliary storage accounting for the partition/refinement phase, in keys
  // (fragment pool, spare fragment, counting-sort buffer) and in fragment
  // descriptors. The training sample is reported separately above.
  std::size_t peak_aux_keys = 0;
  std::size_t peak_fragment_descriptors = 0;

  Duration training_time{};
  Duration partition_time{};   // level-0 pass + defragment
  Duration refinement_time{};  // level-1 passes, defragments and counting sorts
  Duration touch_up_time{};    // final insertion sort
  Duration total_time{};

  std::vector<SkippedRange> skipped_ranges;  // only with SortConfig::record_trace
};

// Sorts `keys` ascending. Small inputs (<= fallback_threshold) go straight to
// std::sort; otherwise a model is trained on a sample and the keys are
// partitioned twice, counting-sorted per sub-bucket and touched up with an
// insertion sort. Throws std::invalid_argument("unordered key") before
// touching the input if a NaN is present.
SortStats learned_sort(std::span<double> keys, const SortConfig& config = {});
SortStats learned_sort(std::span<std::uint64_t> keys, const SortConfig& config = {});

// The sorting pipeline with a caller-supplied model (no sampling, no
// fallback). Output is sorted for any valid model; model quality only
// affects speed.
SortStats learned_sort_with_model(std::span<double> keys, const EcdfModel& model, const SortConfig& config = {});
SortStats learned_sort_with_model(std::span<std::uint64_t> keys, const EcdfModel& model,
                                  const SortConfig& config = {});

template <typename Key>
bool is_homogeneous(std::span<const Key> range) noexcept {
  if (range.empty()) return true;
  const Key first = range.front();
  for (const Key& k : range) {
    if (!(k == first)) return false;
  }
  return true;
}

// Model-based counting sort of sub-bucket j of bucket i. Histogram slot of a
// key is floor((cdf - (i*f + j)/f^2) * total_n), clamped into [0, n').
// `scratch` needs range.size() keys and `counts` range.size() counters.
template <typename Key>
void counting_sort_bucket(std::span<Key> range, const EcdfModel& model, std::size_t i, std::size_t j,
                          std::size_t fanout, std::size_t total_n, std::span<Key> scratch,
                          std::span<std::size_t> counts);

// Plain insertion sort. Returns the largest distance any key moved left.
template <typename Key>
std::size_t insertion_sort_cleanup(std::span<Key> keys) noexcept {
  std::size_t max_shift = 0;
  for (std::size_t i = 1; i < keys.size(); ++i) {
    const Key x = keys[i];
    std::size_t j = i;
    while (j > 0 && x < keys[j - 1]) {
      keys[j] = keys[j - 1];
      --j;
    }
    keys[j] = x;
    max_shift = std::max(max_shift, i - j);
  }
  return max_shift;
}

}  // namespace learnedsort
