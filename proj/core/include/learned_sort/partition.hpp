#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "learned_sort/aux_memory.hpp"
#include "learned_sort/model.hpp"

namespace learnedsort {

struct FragmentDescriptor {
  std::uint32_t bucket_id = 0;
  std::uint32_t size = 0;

  friend bool operator==(const FragmentDescriptor&, const FragmentDescriptor&) = default;
};

struct PartitionResult {
  std::vector<std::size_t> bucket_sizes;         // S_B
  std::vector<FragmentDescriptor> fragment_log;  // S_F, in write order
  std::size_t fragment_capacity = 0;
};

// f fixed-capacity fragments backed by one f*c buffer. This is the only key
// storage a partition pass uses; there is no overflow container.
template <typename Key>
class FragmentPool {
 public:
  FragmentPool(std::size_t fragments, std::size_t capacity, AuxMeter* meter = nullptr);

  std::size_t fragments() const noexcept { return fill_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::span<const std::uint32_t> fill() const noexcept { return fill_; }
  bool empty() const noexcept;

  // The backing store, f*c keys. Only meaningful as scratch while empty().
  std::span<Key> storage() noexcept { return storage_.span(); }

 private:
  template <typename K>
  friend PartitionResult partition_pass(std::span<K>, const EcdfModel&, int, std::size_t, std::size_t,
                                        FragmentPool<K>&);

  MeteredBuffer<Key> storage_;
  std::vector<std::uint32_t> fill_;
  std::size_t capacity_;
};

enum class DefragMode {
  strict,     // O(f*c) auxiliary keys
  reference,  // N-sized gather; the oracle for strict
};

// One fragmented partition pass over `range`. Every key is appended to the
// fragment of its predicted bucket; full fragments are written back at the
// write head, and the partial ones are flushed in bucket order at the end.
// At level 1, `parent` is the enclosing level-0 bucket.
template <typename Key>
PartitionResult partition_pass(std::span<Key> range, const EcdfModel& model, int level,
                               std::size_t parent, std::size_t fanout, FragmentPool<Key>& pool);

// Keys needed in `scratch` by strict-mode defragment: the partial-fragment
// tail. `spare` must additionally hold one fragment (c keys).
std::size_t partial_fragment_keys(const PartitionResult& result);

// Makes each bucket contiguous: bucket b ends up at [start_b, start_b + S_B[b]).
// Returns the start offsets. Strict mode permutes full fragments by cycle
// following through `spare`, then lays the partial tail (parked in `scratch`)
// behind each bucket's full fragments. Reference mode gathers through a
// scratch of range.size() keys.
// Throws std::runtime_error("corrupt partition state") if `result` does not
// describe `range`, and std::invalid_argument if a buffer is too small.
template <typename Key>
std::vector<std::size_t> defragment(std::span<Key> range, const PartitionResult& result,
                                    std::span<Key> scratch, std::span<Key> spare,
                                    DefragMode mode = DefragMode::strict);

}  // namespace learnedsort
