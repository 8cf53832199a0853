#include "learned_sort/partition.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace learnedsort {

template <typename Key>
FragmentPool<Key>::FragmentPool(std::size_t fragments, std::size_t capacity, AuxMeter* meter)
    : storage_(fragments * capacity, meter), fill_(fragments, 0), capacity_(capacity) {
  if (fragments == 0 || capacity == 0) throw std::invalid_argument("fragment pool needs f >= 1 and c >= 1");
  if (capacity > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("fragment capacity too large");
}

template <typename Key>
bool FragmentPool<Key>::empty() const noexcept {
  return std::all_of(fill_.begin(), fill_.end(), [](std::uint32_t n) { return n == 0; });
}

namespace {

template <typename Key, typename BucketOf>
void scatter(std::span<Key> range, BucketOf bucket_of, Key* frags, std::uint32_t* fill, std::size_t c,
             PartitionResult& result) {
  std::size_t* sizes = result.bucket_sizes.data();
  Key* out = range.data();
  std::size_t w = 0;
  const auto cap = static_cast<std::uint32_t>(c);
  for (std::size_t r = 0; r < range.size(); ++r) {
    const Key x = range[r];
    const std::size_t b = bucket_of(x);
    Key* frag = frags + b * c;
    frag[fill[b]++] = x;
    ++sizes[b];
    if (fill[b] == cap) {
      // w + c <= r + 1: everything being overwritten has been scanned.
      std::copy_n(frag, c, out + w);
      w += c;
      result.fragment_log.push_back({static_cast<std::uint32_t>(b), cap});
      fill[b] = 0;
    }
  }
  const std::size_t fanout = result.bucket_sizes.size();
  for (std::size_t i = 0; i < fanout; ++i) {
    const std::uint32_t s = fill[i];
    if (s == 0) continue;
    std::copy_n(frags + i * c, s, out + w);
    result.fragment_log.push_back({static_cast<std::uint32_t>(i), s});
    w += s;
    fill[i] = 0;
  }
  assert(w == range.size());
}

}  // namespace

template <typename Key>
PartitionResult partition_pass(std::span<Key> range, const EcdfModel& model, int level, std::size_t parent,
                               std::size_t fanout, FragmentPool<Key>& pool) {
  if (fanout == 0 || pool.fragments() < fanout) throw std::invalid_argument("fragment pool smaller than fanout");
  if (fanout > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("fanout too large");
  assert(pool.empty());

  const std::size_t c = pool.capacity();
  PartitionResult result;
  result.bucket_sizes.assign(fanout, 0);
  result.fragment_capacity = c;
  result.fragment_log.reserve(range.size() / c + std::min(fanout, range.size()));

  Key* frags = pool.storage_.data();
  std::uint32_t* fill = pool.fill_.data();
  if (level == 0) {
    scatter(range, [&](Key x) { return model.bucket_index(static_cast<double>(x), 0, fanout, 0); }, frags, fill, c,
            result);
  } else {
    scatter(range, [&](Key x) { return model.bucket_index(static_cast<double>(x), 1, fanout, parent); }, frags,
            fill, c, result);
  }
  return result;
}

std::size_t partial_fragment_keys(const PartitionResult& result) {
  std::size_t total = 0;
  for (const auto& d : result.fragment_log) {
    if (d.size < result.fragment_capacity) total += d.size;
  }
  return total;
}

namespace {

[[noreturn]] void corrupt() { throw std::runtime_error("corrupt partition state"); }

// Checks that `result` describes a range of n keys laid out by partition_pass
// and returns the bucket start offsets.
std::vector<std::size_t> validate(std::size_t n, const PartitionResult& result) {
  const std::size_t f = result.bucket_sizes.size();
  const std::size_t c = result.fragment_capacity;
  if (f == 0 || c == 0) corrupt();

  std::vector<std::size_t> logged(f, 0);
  std::size_t total = 0;
  bool in_tail = false;
  std::size_t last_partial = 0;
  for (const auto& d : result.fragment_log) {
    if (d.bucket_id >= f || d.size == 0 || d.size > c) corrupt();
    if (d.size < c) {
      if (in_tail && d.bucket_id <= last_partial) corrupt();
      in_tail = true;
      last_partial = d.bucket_id;
    } else if (in_tail) {
      corrupt();  // full fragment after the flush region
    }
    logged[d.bucket_id] += d.size;
    total += d.size;
  }
  if (total != n) corrupt();

  std::vector<std::size_t> starts(f);
  std::size_t acc = 0;
  for (std::size_t b = 0; b < f; ++b) {
    if (logged[b] != result.bucket_sizes[b]) corrupt();
    starts[b] = acc;
    acc += result.bucket_sizes[b];
  }
  if (acc != n) corrupt();
  return starts;
}

template <typename Key>
void defragment_reference(std::span<Key> range, const PartitionResult& result, std::span<Key> scratch,
                          std::vector<std::size_t> cursor) {
  if (scratch.size() < range.size()) throw std::invalid_argument("reference defragment needs range-sized scratch");
  std::size_t p = 0;
  for (const auto& d : result.fragment_log) {
    std::copy_n(range.data() + p, d.size, scratch.data() + cursor[d.bucket_id]);
    cursor[d.bucket_id] += d.size;
    p += d.size;
  }
  std::copy_n(scratch.data(), range.size(), range.data());
}

template <typename Key>
void defragment_strict(std::span<Key> range, const PartitionResult& result, std::span<Key> scratch,
                       std::span<Key> spare, const std::vector<std::size_t>& starts) {
  const std::size_t f = result.bucket_sizes.size();
  const std::size_t c = result.fragment_capacity;
  const auto& log = result.fragment_log;

  std::size_t full = 0;
  while (full < log.size() && log[full].size == c) ++full;
  const std::size_t partial_keys = range.size() - full * c;
  if (scratch.size() < partial_keys) throw std::invalid_argument("defragment scratch too small");
  if (full > 0 && spare.size() < c) throw std::invalid_argument("defragment spare smaller than one fragment");

  // Phase 1: permute full fragments so each bucket's full fragments form one
  // aligned group, groups in bucket order.
  std::vector<std::size_t> group_start(f, 0);
  for (std::size_t k = 0; k < full; ++k) ++group_start[log[k].bucket_id];
  std::size_t acc = 0;
  for (std::size_t b = 0; b < f; ++b) {
    const std::size_t count = group_start[b];
    group_start[b] = acc;
    acc += count;
  }

  constexpr std::size_t kPlaced = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> target(full);
  {
    std::vector<std::size_t> next = group_start;
    for (std::size_t k = 0; k < full; ++k) target[k] = next[log[k].bucket_id]++;
  }

  Key* base = range.data();
  Key* held = spare.data();
  for (std::size_t s = 0; s < full; ++s) {
    if (target[s] == kPlaced) continue;
    if (target[s] == s) {
      target[s] = kPlaced;
      continue;
    }
    std::copy_n(base + s * c, c, held);
    std::size_t t = target[s];
    for (;;) {
      const std::size_t after = target[t];
      std::swap_ranges(held, held + c, base + t * c);
      target[t] = kPlaced;
      if (t == s) break;
      t = after;
    }
  }

  // Phase 2: park the partial tail, then walk buckets right to left, sliding
  // each full group to its final start and appending its partial fragment.
  if (partial_keys == 0) return;
  std::copy_n(base + full * c, partial_keys, scratch.data());

  std::vector<std::size_t> partial_off(f, 0);
  std::vector<std::size_t> partial_len(f, 0);
  std::size_t off = 0;
  for (std::size_t k = full; k < log.size(); ++k) {
    partial_off[log[k].bucket_id] = off;
    partial_len[log[k].bucket_id] = log[k].size;
    off += log[k].size;
  }

  for (std::size_t b = f; b-- > 0;) {
    const std::size_t src = group_start[b] * c;
    const std::size_t len = result.bucket_sizes[b] - partial_len[b];
    const std::size_t dst = starts[b];
    if (dst != src && len > 0) std::move_backward(base + src, base + src + len, base + dst + len);
    std::copy_n(scratch.data() + partial_off[b], partial_len[b], base + dst + len);
  }
}

}  // namespace

template <typename Key>
std::vector<std::size_t> defragment(std::span<Key> range, const PartitionResult& result, std::span<Key> scratch,
                                    std::span<Key> spare, DefragMode mode) {
  std::vector<std::size_t> starts = validate(range.size(), result);
  if (mode == DefragMode::reference) {
    defragment_reference(range, result, scratch, starts);
  } else {
    defragment_strict(range, result, scratch, spare, starts);
  }
  return starts;
}

template class FragmentPool<double>;
template class FragmentPool<std::uint64_t>;

template PartitionResult partition_pass<double>(std::span<double>, const EcdfModel&, int, std::size_t, std::size_t,
                                                FragmentPool<double>&);
template PartitionResult partition_pass<std::uint64_t>(std::span<std::uint64_t>, const EcdfModel&, int,
                                                       std::size_t, std::size_t, FragmentPool<std::uint64_t>&);

template std::vector<std::size_t> defragment<double>(std::span<double>, const PartitionResult&, std::span<double>,
                                                     std::span<double>, DefragMode);
template std::vector<std::size_t> defragment<std::uint64_t>(std::span<std::uint64_t>, const PartitionResult&,
                                                            std::span<std::uint64_t>, std::span<std::uint64_t>,
                                                            DefragMode);

}  // namespace learnedsort
