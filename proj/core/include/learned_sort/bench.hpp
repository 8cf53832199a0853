#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "learned_sort/datagen.hpp"
#include "learned_sort/sorter.hpp"

namespace learnedsort {

enum class Algorithm { learned_sort2, std_sort, lsd_radix };
enum class KeyType { f64, u64 };

std::string_view algorithm_name(Algorithm algorithm) noexcept;
Algorithm parse_algorithm(std::string_view name);  // throws "unknown algorithm '<name>'"
std::vector<Algorithm> parse_algorithm_list(std::string_view comma_separated);
KeyType parse_key_type(std::string_view name);  // "f64" or "u64"

// One timed configuration. The elapsed time is the best (minimum) over the
// repeats; the verification flags are the conjunction over all of them.
struct BenchmarkRecord {
  std::string algorithm;
  std::string dataset;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double duplicate_ratio = 0.0;
  std::int64_t elapsed_ns = 0;
  double rate_keys_per_sec = 0.0;
  bool sorted_ok = false;
  bool permutation_ok = false;

  bool verified() const noexcept { return sorted_ok && permutation_ok; }
};

template <typename Key>
bool verify_sorted(std::span<const Key> keys) noexcept {
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i] < keys[i - 1]) return false;
  }
  return true;
}

// sorted(before) == sorted(after); false on a length mismatch.
template <typename Key>
bool verify_permutation(std::span<const Key> before, std::span<const Key> after);

// Raw little-endian 64-bit keys in file order. Throws std::runtime_error if
// the file cannot be read, its size is not a multiple of 8, or (f64) it
// holds a NaN.
template <typename Key>
std::vector<Key> read_keys_binary(const std::filesystem::path& path);

template <typename Key>
void write_keys_binary(const std::filesystem::path& path, std::span<const Key> keys);

inline constexpr std::string_view kCsvHeader =
    "algorithm,dataset,n,seed,dup_ratio,elapsed_ns,rate_keys_per_sec,sorted_ok,permutation_ok";

void write_csv(std::ostream& out, std::span<const BenchmarkRecord> records);
// Throws std::runtime_error if the path cannot be written.
void write_csv(const std::filesystem::path& path, std::span<const BenchmarkRecord> records);
std::vector<BenchmarkRecord> read_csv(std::istream& in);
std::vector<BenchmarkRecord> read_csv(const std::filesystem::path& path);

struct BenchOptions {
  std::vector<Algorithm> algorithms{Algorithm::learned_sort2};
  std::size_t repeats = 5;
  SortConfig sort_config{};
};

// Times every algorithm on fresh copies of `data`, verifying each output.
template <typename Key>
std::vector<BenchmarkRecord> run_benchmark(std::span<const Key> data, std::string_view dataset, std::uint64_t seed,
                                           const BenchOptions& options);

std::vector<BenchmarkRecord> run_benchmark(const DatasetSpec& spec, const BenchOptions& options,
                                           KeyType type = KeyType::f64);

// Zipf datasets over `skews` (f64 keys), preceded by a standard-normal
// reference run of the same size.
std::vector<BenchmarkRecord> run_zipf_sweep(std::size_t n, std::span<const double> skews, std::uint64_t seed,
                                            const BenchOptions& options);

std::vector<BenchmarkRecord> run_size_sweep(const DatasetSpec& base, std::span<const std::size_t> sizes,
                                            const BenchOptions& options, KeyType type = KeyType::f64);

}  // namespace learnedsort
