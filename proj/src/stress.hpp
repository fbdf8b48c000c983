#ifndef RTPIPE_STRESS_HPP
#define RTPIPE_STRESS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rtpipe {

// Fixed-size checksummed payload used by the concurrent harnesses. A torn
// read (reader overlapping a writer in the same cell) fails the checksum.
struct StressMessage {
  std::uint64_t seq = 0;
  std::uint64_t body[6] = {};
  std::uint64_t checksum = 0;
};

StressMessage make_stress_message(std::uint64_t seq);
bool stress_message_intact(const StressMessage& m);

struct FourSlotStressReport {
  std::uint64_t writes = 0;
  std::uint64_t reads = 0;
  std::uint64_t integrity_violations = 0;   // checksum failures
  std::uint64_t freshness_violations = 0;   // read older than a completed write
  std::uint64_t monotonicity_violations = 0;
  std::uint64_t max_write_steps = 0;        // per-op step counts (wait-freedom proxy)
  std::uint64_t max_read_steps = 0;
  bool ok() const {
    return integrity_violations == 0 && freshness_violations == 0 &&
           monotonicity_violations == 0;
  }
  std::string summary() const;
  // (write_seq at read, read begin ns, read end ns) sample rows for offline checking
  std::vector<std::string> csv_rows;
};

FourSlotStressReport run_fourslot_stress(std::uint64_t ops, std::uint64_t seed,
                                         bool relaxed_ordering = false,
                                         bool emit_csv = false);

struct FifoStressReport {
  std::uint64_t pushed = 0;
  std::uint64_t popped = 0;
  std::uint64_t push_timeouts = 0;
  std::uint64_t pop_timeouts = 0;
  std::uint64_t order_violations = 0;
  std::uint64_t conservation_violations = 0;
  std::size_t max_depth = 0;
  bool ok() const { return order_violations == 0 && conservation_violations == 0; }
  std::string summary() const;
};

// Producer and consumer threads moving `messages` through a BoundedFifo of
// the given capacity. pace_ns > 0 spins between operations on both sides
// (rate-matched load); timeouts are per-op deadlines.
FifoStressReport run_fifo_stress(std::uint64_t messages, std::size_t capacity,
                                 std::int64_t push_timeout_us,
                                 std::int64_t pop_timeout_us,
                                 std::int64_t pace_ns, std::uint64_t seed);

// Exhaustive small-scope check of the four-slot state machine: every
// interleaving of two writes against two reads, with payload copies split
// into two steps so torn reads are representable. Returns the number of
// interleavings explored; violations come back through the report.
struct InterleavingReport {
  std::uint64_t interleavings = 0;
  std::uint64_t torn_reads = 0;
  std::uint64_t stale_reads = 0;
  bool ok() const { return torn_reads == 0 && stale_reads == 0; }
};
InterleavingReport enumerate_fourslot_interleavings();

}  // namespace rtpipe

#endif
