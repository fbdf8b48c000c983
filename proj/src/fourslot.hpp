#ifndef RTPIPE_FOURSLOT_HPP
#define RTPIPE_FOURSLOT_HPP

#include <atomic>
#include <cstdint>
#include <optional>
#include <type_traits>

namespace rtpipe {

// Simpson's four-slot fully asynchronous register: one writer, one reader,
// neither ever waits on the other. The writer always steers away from the
// pair the reader announced; the reader always follows the freshest pair.
// Both operations are straight-line code (no retry loops), so the step count
// is constant regardless of contention.
//
// Control words are atomic; the payload copy is plain memory. The algorithm
// guarantees reader and writer never touch the same cell concurrently, which
// is what the checksummed stress harness verifies.
enum class SlotOrdering { SeqCst, AcqRel };

template <typename T, SlotOrdering Ordering = SlotOrdering::SeqCst>
class FourSlotRegister {
  static_assert(std::is_trivially_copyable_v<T>);

  static constexpr std::memory_order load_order() {
    return Ordering == SlotOrdering::SeqCst ? std::memory_order_seq_cst
                                            : std::memory_order_acquire;
  }
  static constexpr std::memory_order store_order() {
    return Ordering == SlotOrdering::SeqCst ? std::memory_order_seq_cst
                                            : std::memory_order_release;
  }

 public:
  // Writer side only.
  void write(const T& value) {
    const int pair = 1 - reading_.load(load_order());
    const int index = 1 - slot_[pair].load(load_order());
    data_[pair][index] = value;
    slot_[pair].store(index, store_order());
    latest_.store(pair, store_order());
    write_steps_ += 4;
  }

  // Reader side only. Empty until the first write completes.
  std::optional<T> read() {
    const int pair = latest_.load(load_order());
    if (pair < 0) return std::nullopt;
    reading_.store(pair, store_order());
    const int index = slot_[pair].load(load_order());
    read_steps_ += 3;
    return data_[pair][index];
  }

  // Instrumentation for the wait-freedom check: steps per op are constant.
  std::uint64_t writer_steps() const { return write_steps_; }
  std::uint64_t reader_steps() const { return read_steps_; }

 private:
  T data_[2][2] = {};
  std::atomic<int> slot_[2] = {0, 0};    // freshest cell within each pair
  std::atomic<int> latest_{-1};          // -1: nothing written yet
  std::atomic<int> reading_{0};          // pair the reader is using
  std::uint64_t write_steps_ = 0;        // touched by writer thread only
  std::uint64_t read_steps_ = 0;         // touched by reader thread only
};

}  // namespace rtpipe

#endif
