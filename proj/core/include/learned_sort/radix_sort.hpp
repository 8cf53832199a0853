#pragma once

#include <cstdint>
#include <span>

namespace learnedsort {

// LSD radix sort: 8-bit digits, 8 passes over the 64-bit key. Doubles are
// mapped to order-preserving unsigned images (sign bit flipped for
// non-negatives, all bits flipped for negatives) and back.
void lsd_radix_sort(std::span<std::uint64_t> keys);
void lsd_radix_sort(std::span<double> keys);

}  // namespace learnedsort
