#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>

namespace learnedsort {

// Tracks live and peak element counts for a family of auxiliary buffers.
struct AuxMeter {
  std::size_t current = 0;
  std::size_t peak = 0;

  void acquire(std::size_t n) noexcept {
    current += n;
    peak = std::max(peak, current);
  }
  void release(std::size_t n) noexcept { current -= n; }
};

// Uninitialized heap buffer of T that reports its size to an optional meter.
template <typename T>
class MeteredBuffer {
 public:
  MeteredBuffer() = default;
  explicit MeteredBuffer(std::size_t n, AuxMeter* meter = nullptr)
      : data_(n ? std::make_unique_for_overwrite<T[]>(n) : nullptr), size_(n), meter_(meter) {
    if (meter_) meter_->acquire(size_);
  }
  ~MeteredBuffer() { reset(); }

  MeteredBuffer(MeteredBuffer&& other) noexcept
      : data_(std::move(other.data_)), size_(other.size_), meter_(other.meter_) {
    other.size_ = 0;
  }
  MeteredBuffer& operator=(MeteredBuffer&& other) noexcept {
    if (this != &other) {
      reset();
      data_ = std::move(other.data_);
      size_ = other.size_;
      meter_ = other.meter_;
      other.size_ = 0;
    }
    return *this;
  }
  MeteredBuffer(const MeteredBuffer&) = delete;
  MeteredBuffer& operator=(const MeteredBuffer&) = delete;

  // Grows to at least n elements. Contents are not preserved; the old block
  // is released before the new one is acquired so the peak never holds both.
  void ensure(std::size_t n) {
    if (n <= size_) return;
    AuxMeter* meter = meter_;
    reset();
    meter_ = meter;
    data_ = std::make_unique_for_overwrite<T[]>(n);
    size_ = n;
    if (meter_) meter_->acquire(size_);
  }

  void reset() noexcept {
    if (meter_) meter_->release(size_);
    data_.reset();
    size_ = 0;
  }

  T* data() noexcept { return data_.get(); }
  const T* data() const noexcept { return data_.get(); }
  std::size_t size() const noexcept { return size_; }
  std::span<T> span() noexcept { return {data_.get(), size_}; }
  std::span<T> first(std::size_t n) noexcept { return {data_.get(), n}; }

 private:
  std::unique_ptr<T[]> data_;
  std::size_t size_ = 0;
  AuxMeter* meter_ = nullptr;
};

}  // namespace learnedsort
