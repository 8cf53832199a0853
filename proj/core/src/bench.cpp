#include "learned_sort/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "learned_sort/radix_sort.hpp"

namespace learnedsort {

std::string_view algorithm_name(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::learned_sort2:
      return "learned_sort2";
    case Algorithm::std_sort:
      return "std_sort";
    case Algorithm::lsd_radix:
      return "lsd_radix";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::learned_sort2, Algorithm::std_sort, Algorithm::lsd_radix}) {
    if (algorithm_name(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::vector<Algorithm> parse_algorithm_list(std::string_view comma_separated) {
  std::vector<Algorithm> out;
  std::size_t pos = 0;
  while (pos <= comma_separated.size()) {
    const std::size_t end = std::min(comma_separated.find(',', pos), comma_separated.size());
    const std::string_view item = comma_separated.substr(pos, end - pos);
    if (!item.empty()) out.push_back(parse_algorithm(item));
    pos = end + 1;
  }
  if (out.empty()) throw std::invalid_argument("no algorithms given");
  return out;
}

KeyType parse_key_type(std::string_view name) {
  if (name == "f64") return KeyType::f64;
  if (name == "u64") return KeyType::u64;
  throw std::invalid_argument("unknown key type '" + std::string(name) + "' (expected f64 or u64)");
}

template <typename Key>
bool verify_permutation(std::span<const Key> before, std::span<const Key> after) {
  if (before.size() != after.size()) return false;
  std::vector<Key> a(before.begin(), before.end());
  std::vector<Key> b(after.begin(), after.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::equal(a.begin(), a.end(), b.begin());
}

template bool verify_permutation<double>(std::span<const double>, std::span<const double>);
template bool verify_permutation<std::uint64_t>(std::span<const std::uint64_t>, std::span<const std::uint64_t>);

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xff) << (8 * (7 - i));
    return r;
  }
  return v;
}

}  // namespace

template <typename Key>
std::vector<Key> read_keys_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const auto size = static_cast<std::size_t>(in.tellg());
  if (size % 8 != 0) throw std::runtime_error(path.string() + ": size is not a multiple of 8 bytes");
  in.seekg(0);

  std::vector<std::uint64_t> raw(size / 8);
  if (size > 0 && !in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(size))) {
    throw std::runtime_error("short read from " + path.string());
  }
  std::vector<Key> keys(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    keys[i] = std::bit_cast<Key>(to_little_endian(raw[i]));
    if constexpr (std::is_floating_point_v<Key>) {
      if (std::isnan(keys[i])) {
        throw std::runtime_error(path.string() + ": NaN key at index " + std::to_string(i));
      }
    }
  }
  return keys;
}

template <typename Key>
void write_keys_binary(const std::filesystem::path& path, std::span<const Key> keys) {
  std::vector<std::uint64_t> raw(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) raw[i] = to_little_endian(std::bit_cast<std::uint64_t>(keys[i]));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 8));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

template std::vector<double> read_keys_binary<double>(const std::filesystem::path&);
template std::vector<std::uint64_t> read_keys_binary<std::uint64_t>(const std::filesystem::path&);
template void write_keys_binary<double>(const std::filesystem::path&, std::span<const double>);
template void write_keys_binary<std::uint64_t>(const std::filesystem::path&, std::span<const std::uint64_t>);

namespace {

std::string six_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), ',', ';');
  std::replace(out.begin(), out.end(), '\n', ' ');
  return out;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::runtime_error("bad boolean in CSV: " + s);
}

}  // namespace

void write_csv(std::ostream& out, std::span<const BenchmarkRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << csv_field(r.algorithm) << ',' << csv_field(r.dataset) << ',' << r.n << ',' << r.seed << ','
        << six_digits(r.duplicate_ratio) << ',' << r.elapsed_ns << ',' << six_digits(r.rate_keys_per_sec) << ','
        << (r.sorted_ok ? "true" : "false") << ',' << (r.permutation_ok ? "true" : "false") << '\n';
  }
}

void write_csv(const std::filesystem::path& path, std::span<const BenchmarkRecord> records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(out, records);
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::vector<BenchmarkRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("missing or unexpected CSV header");
  std::vector<BenchmarkRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 9) throw std::runtime_error("expected 9 CSV fields, got " + std::to_string(f.size()));
    BenchmarkRecord r;
    r.algorithm = f[0];
    r.dataset = f[1];
    r.n = std::stoull(f[2]);
    r.seed = std::stoull(f[3]);
    r.duplicate_ratio = std::stod(f[4]);
    r.elapsed_ns = std::stoll(f[5]);
    r.rate_keys_per_sec = std::stod(f[6]);
    r.sorted_ok = parse_bool(f[7]);
    r.permutation_ok = parse_bool(f[8]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<BenchmarkRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

namespace {

template <typename Key>
void sort_with(Algorithm algorithm, std::span<Key> keys, const SortConfig& config) {
  switch (algorithm) {
    case Algorithm::learned_sort2:
      learned_sort(keys, config);
      return;
    case Algorithm::std_sort:
      std::sort(keys.begin(), keys.end());
      return;
    case Algorithm::lsd_radix:
      lsd_radix_sort(keys);
      return;
  }
}

}  // namespace

template <typename Key>
std::vector<BenchmarkRecord> run_benchmark(std::span<const Key> data, std::string_view dataset, std::uint64_t seed,
                                           const BenchOptions& options) {
  if (options.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (options.algorithms.empty()) throw std::invalid_argument("no algorithms given");

  const double dup_ratio = duplicate_ratio<Key>(data);
  std::vector<Key> oracle(data.begin(), data.end());
  std::sort(oracle.begin(), oracle.end());

  std::vector<BenchmarkRecord> records;
  std::vector<Key> work(data.size());
  for (Algorithm algorithm : options.algorithms) {
    BenchmarkRecord rec;
    rec.algorithm = std::string(algorithm_name(algorithm));
    rec.dataset = std::string(dataset);
    rec.n = data.size();
    rec.seed = seed;
    rec.duplicate_ratio = dup_ratio;
    rec.sorted_ok = true;
    rec.permutation_ok = true;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t rep = 0; rep < options.repeats; ++rep) {
      std::copy(data.begin(), data.end(), work.begin());
      const auto t0 = std::chrono::steady_clock::now();
      sort_with<Key>(algorithm, work, options.sort_config);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min<std::int64_t>(best, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());

      const bool sorted = verify_sorted<Key>(work);
      rec.sorted_ok = rec.sorted_ok && sorted;
      // A sorted output is a permutation iff it equals the sorted input.
      const bool perm = sorted ? std::equal(work.begin(), work.end(), oracle.begin(), oracle.end())
                               : verify_permutation<Key>(data, work);
      rec.permutation_ok = rec.permutation_ok && perm;
    }
    rec.elapsed_ns = std::max<std::int64_t>(best, 1);
    rec.rate_keys_per_sec = static_cast<double>(rec.n) / (static_cast<double>(rec.elapsed_ns) * 1e-9);
    records.push_back(std::move(rec));
  }
  return records;
}

template std::vector<BenchmarkRecord> run_benchmark<double>(std::span<const double>, std::string_view, std::uint64_t,
                                                            const BenchOptions&);
template std::vector<BenchmarkRecord> run_benchmark<std::uint64_t>(std::span<const std::uint64_t>, std::string_view,
                                                                   std::uint64_t, const BenchOptions&);

std::vector<BenchmarkRecord> run_benchmark(const DatasetSpec& spec, const BenchOptions& options, KeyType type) {
  if (type == KeyType::u64) {
    const auto data = generate_u64(spec);
    return run_benchmark<std::uint64_t>(data, spec.label(), spec.seed, options);
  }
  const auto data = generate(spec);
  return run_benchmark<double>(data, spec.label(), spec.seed, options);
}

std::vector<BenchmarkRecord> run_zipf_sweep(std::size_t n, std::span<const double> skews, std::uint64_t seed,
                                            const BenchOptions& options) {
  std::vector<BenchmarkRecord> out = run_benchmark(DatasetSpec{Family::normal, n, {}, seed}, options);
  for (double skew : skews) {
    auto recs = run_benchmark(DatasetSpec{Family::zipf, n, {{"skew", skew}}, seed}, options);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

std::vector<BenchmarkRecord> run_size_sweep(const DatasetSpec& base, std::span<const std::size_t> sizes,
                                            const BenchOptions& options, KeyType type) {
  std::vector<BenchmarkRecord> out;
  for (std::size_t n : sizes) {
    DatasetSpec spec = base;
    spec.n = n;
    auto recs = run_benchmark(spec, options, type);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

}  // namespace learnedsort
