#include "learned_sort/radix_sort.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <vector>

namespace learnedsort {

namespace {

constexpr std::uint64_t kSignBit = std::uint64_t{1} << 63;

std::uint64_t to_ordered(double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  return (bits & kSignBit) ? ~bits : bits ^ kSignBit;
}

double from_ordered(std::uint64_t u) {
  const std::uint64_t bits = (u & kSignBit) ? u ^ kSignBit : ~u;
  return std::bit_cast<double>(bits);
}

void radix_passes(std::span<std::uint64_t> keys) {
  const std::size_t n = keys.size();
  if (n < 2) return;

  std::array<std::array<std::size_t, 256>, 8> hist{};
  for (const std::uint64_t k : keys) {
    for (int d = 0; d < 8; ++d) ++hist[d][(k >> (8 * d)) & 0xff];
  }

  std::vector<std::uint64_t> buffer(n);
  std::uint64_t* src = keys.data();
  std::uint64_t* dst = buffer.data();
  for (int d = 0; d < 8; ++d) {
    std::size_t sum = 0;
    for (auto& h : hist[d]) {
      const std::size_t count = h;
      h = sum;
      sum += count;
    }
    const int shift = 8 * d;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t k = src[i];
      dst[hist[d][(k >> shift) & 0xff]++] = k;
    }
    std::swap(src, dst);
  }
  // Eight passes: the result is back in `keys`.
}

}  // namespace

void lsd_radix_sort(std::span<std::uint64_t> keys) { radix_passes(keys); }

void lsd_radix_sort(std::span<double> keys) {
  std::vector<std::uint64_t> image(keys.size());
  std::transform(keys.begin(), keys.end(), image.begin(), to_ordered);
  radix_passes(image);
  std::transform(image.begin(), image.end(), keys.begin(), from_ordered);
}

}  // namespace learnedsort
