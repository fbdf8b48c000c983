#ifndef RTPIPE_BOUNDED_FIFO_HPP
#define RTPIPE_BOUNDED_FIFO_HPP

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <mutex>
#include <optional>
#include <vector>

namespace rtpipe {

// Bounded blocking ring buffer for one producer and one consumer. The
// producer parks when the ring is full, the consumer when it is empty;
// optional deadlines turn a park into a TimedOut result.
template <typename T>
class BoundedFifo {
 public:
  explicit BoundedFifo(std::size_t capacity)
      : ring_(capacity > 0 ? capacity : 1), capacity_(capacity > 0 ? capacity : 1) {}

  // False means the deadline elapsed while full.
  bool push(const T& value, std::optional<std::int64_t> timeout_us = std::nullopt) {
    std::unique_lock lock(mutex_);
    if (!wait(lock, not_full_, timeout_us, [this] { return size_ < capacity_; })) {
      ++push_timeouts_;
      return false;
    }
    ring_[tail_] = value;
    tail_ = (tail_ + 1) % capacity_;
    ++size_;
    ++pushes_;
    if (size_ > max_depth_) max_depth_ = size_;
    not_empty_.notify_one();
    return true;
  }

  std::optional<T> pop(std::optional<std::int64_t> timeout_us = std::nullopt) {
    std::unique_lock lock(mutex_);
    if (!wait(lock, not_empty_, timeout_us, [this] { return size_ > 0; })) {
      ++pop_timeouts_;
      return std::nullopt;
    }
    T value = ring_[head_];
    head_ = (head_ + 1) % capacity_;
    --size_;
    ++pops_;
    not_full_.notify_one();
    return value;
  }

  std::size_t size() const {
    std::unique_lock lock(mutex_);
    return size_;
  }
  std::size_t capacity() const { return capacity_; }
  long pushes() const { return pushes_; }
  long pops() const { return pops_; }
  long push_timeouts() const { return push_timeouts_; }
  long pop_timeouts() const { return pop_timeouts_; }
  std::size_t max_depth() const { return max_depth_; }

 private:
  template <typename Pred>
  bool wait(std::unique_lock<std::mutex>& lock, std::condition_variable& cv,
            std::optional<std::int64_t> timeout_us, Pred pred) {
    if (!timeout_us) {
      cv.wait(lock, pred);
      return true;
    }
    return cv.wait_for(lock, std::chrono::microseconds(*timeout_us), pred);
  }

  std::vector<T> ring_;
  const std::size_t capacity_;
  std::size_t head_ = 0, tail_ = 0, size_ = 0, max_depth_ = 0;
  long pushes_ = 0, pops_ = 0, push_timeouts_ = 0, pop_timeouts_ = 0;
  mutable std::mutex mutex_;
  std::condition_variable not_full_, not_empty_;
};

}  // namespace rtpipe

#endif
