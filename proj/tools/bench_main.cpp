// bench: dataset generation, sorting benchmarks and output verification.
//
//   bench run --family normal --n 1000000 --algos learned_sort2,std_sort
//   bench sweep-zipf --n 10000000 --skews 0.5,0.6,0.7,0.8,0.9,0.99 --csv zipf.csv
//   bench sweep-size --family uniform --sizes 1e6,1e7,1e8 --csv sizes.csv
//   bench file --path keys.bin --type f64 --algos learned_sort2
//   bench gen --family zipf --n 1000000 --param skew=0.99 --out keys.bin
//
// Exit status: 0 if every record verified, 1 if any did not, 2 on bad input.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "learned_sort/bench.hpp"
#include "learned_sort/datagen.hpp"

namespace ls = learnedsort;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kBadInput = 2;

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected k=v, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("bad number in '" + item + "'");
    out[item.substr(0, eq)] = v;
  }
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& csv, const char* what) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t end = std::min(csv.find(',', pos), csv.size());
    const std::string item = csv.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument(std::string("bad ") + what + " '" + item + "'");
    if constexpr (std::is_integral_v<T>) {
      // Sizes may be written as 1e7.
      if (v < 0 || v != std::floor(v)) throw std::invalid_argument(std::string("bad ") + what + " '" + item + "'");
    }
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw std::invalid_argument(std::string("no ") + what + " given");
  return out;
}

int report(const std::vector<ls::BenchmarkRecord>& records, const std::string& csv_path) {
  if (csv_path.empty() || csv_path == "-") {
    ls::write_csv(std::cout, records);
  } else {
    ls::write_csv(std::filesystem::path(csv_path), records);
  }
  int failures = 0;
  for (const auto& r : records) {
    std::fprintf(stderr, "%-14s %-28s n=%-10zu %12.4g keys/s  %s\n", r.algorithm.c_str(), r.dataset.c_str(), r.n,
                 r.rate_keys_per_sec, r.verified() ? "ok" : "VERIFICATION FAILED");
    if (!r.verified()) ++failures;
  }
  return failures == 0 ? 0 : kVerifyFailed;
}

struct Common {
  std::string algos = "learned_sort2,std_sort,lsd_radix";
  std::size_t repeats = 5;
  std::string csv;

  ls::BenchOptions options() const {
    ls::BenchOptions opts;
    opts.algorithms = ls::parse_algorithm_list(algos);
    opts.repeats = repeats;
    return opts;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--algos", c.algos, "Comma-separated: learned_sort2, std_sort, lsd_radix")->capture_default_str();
  cmd->add_option("--repeats", c.repeats, "Timed runs per algorithm; the fastest is reported")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--csv", c.csv, "Output CSV path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LearnedSort 2.0 benchmark and verification harness"};
  app.require_subcommand(1);

  Common common;
  std::string family = "normal";
  std::size_t n = 1'000'000;
  std::uint64_t seed = 42;
  std::vector<std::string> params;
  std::string type = "f64";

  auto* run = app.add_subcommand("run", "Benchmark one generated dataset");
  run->add_option("--family", family, "Generator family")->capture_default_str();
  run->add_option("--n", n, "Number of keys")->capture_default_str();
  run->add_option("--seed", seed, "Generator seed")->capture_default_str();
  run->add_option("--param", params, "Family parameter k=v (repeatable)");
  run->add_option("--type", type, "Key type: f64 or u64")->capture_default_str();
  add_common(run, common);

  std::string skews = "0.5,0.6,0.7,0.8,0.9,0.99";
  auto* sweep_zipf = app.add_subcommand("sweep-zipf", "Zipf skew sweep with a standard-normal reference");
  sweep_zipf->add_option("--n", n, "Number of keys")->capture_default_str();
  sweep_zipf->add_option("--seed", seed, "Generator seed")->capture_default_str();
  sweep_zipf->add_option("--skews", skews, "Comma-separated skews")->capture_default_str();
  add_common(sweep_zipf, common);

  std::string sizes = "1e6,1e7,1e8";
  auto* sweep_size = app.add_subcommand("sweep-size", "Scalability sweep over input sizes");
  sweep_size->add_option("--family", family, "Generator family")->capture_default_str();
  sweep_size->add_option("--sizes", sizes, "Comma-separated sizes (1e7 notation accepted)")->capture_default_str();
  sweep_size->add_option("--seed", seed, "Generator seed")->capture_default_str();
  sweep_size->add_option("--param", params, "Family parameter k=v (repeatable)");
  sweep_size->add_option("--type", type, "Key type: f64 or u64")->capture_default_str();
  add_common(sweep_size, common);

  std::string path;
  auto* file = app.add_subcommand("file", "Benchmark keys read from a raw little-endian binary file");
  file->add_option("--path", path, "Input file")->required();
  file->add_option("--type", type, "Key type: f64 or u64")->capture_default_str();
  add_common(file, common);

  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Write a generated dataset as raw little-endian keys");
  gen->add_option("--family", family, "Generator family")->capture_default_str();
  gen->add_option("--n", n, "Number of keys")->capture_default_str();
  gen->add_option("--seed", seed, "Generator seed")->capture_default_str();
  gen->add_option("--param", params, "Family parameter k=v (repeatable)");
  gen->add_option("--type", type, "Key type: f64 or u64")->capture_default_str();
  gen->add_option("--out", out_path, "Output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const ls::KeyType key_type = ls::parse_key_type(type);

    if (*run || *sweep_size || *gen) {
      ls::DatasetSpec spec{ls::parse_family(family), n, parse_params(params), seed};
      if (key_type == ls::KeyType::u64 && !ls::has_integer_keys(spec.family)) {
        throw std::invalid_argument("family '" + family + "' has no u64 keys");
      }
      if (*gen) {
        if (key_type == ls::KeyType::u64) {
          ls::write_keys_binary<std::uint64_t>(out_path, ls::generate_u64(spec));
        } else {
          ls::write_keys_binary<double>(out_path, ls::generate(spec));
        }
        return 0;
      }
      if (*run) return report(ls::run_benchmark(spec, common.options(), key_type), common.csv);
      const auto list = parse_list<std::size_t>(sizes, "size");
      return report(ls::run_size_sweep(spec, list, common.options(), key_type), common.csv);
    }

    if (*sweep_zipf) {
      const auto list = parse_list<double>(skews, "skew");
      return report(ls::run_zipf_sweep(n, list, seed, common.options()), common.csv);
    }

    if (*file) {
      const std::string label = std::filesystem::path(path).filename().string();
      if (key_type == ls::KeyType::u64) {
        const auto keys = ls::read_keys_binary<std::uint64_t>(path);
        return report(ls::run_benchmark<std::uint64_t>(keys, label, 0, common.options()), common.csv);
      }
      const auto keys = ls::read_keys_binary<double>(path);
      return report(ls::run_benchmark<double>(keys, label, 0, common.options()), common.csv);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bench: %s\n", e.what());
    return kBadInput;
  }
  return kBadInput;
}
