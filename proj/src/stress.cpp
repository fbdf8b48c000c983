#include "stress.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "bounded_fifo.hpp"
#include "fourslot.hpp"
#include "rng.hpp"

namespace rtpipe {

StressMessage make_stress_message(std::uint64_t seq) {
  StressMessage m;
  m.seq = seq;
  Rng rng(seq * 0x9e3779b97f4a7c15ull + 1);
  for (auto& w : m.body) w = rng.next();
  m.checksum = fnv1a64(&m, offsetof(StressMessage, checksum));
  return m;
}

bool stress_message_intact(const StressMessage& m) {
  return m.checksum == fnv1a64(&m, offsetof(StressMessage, checksum));
}

std::string FourSlotStressReport::summary() const {
  std::ostringstream os;
  os << "fourslot: writes=" << writes << " reads=" << reads
     << " integrity_violations=" << integrity_violations
     << " freshness_violations=" << freshness_violations
     << " monotonicity_violations=" << monotonicity_violations
     << " max_write_steps=" << max_write_steps
     << " max_read_steps=" << max_read_steps << " verdict="
     << (ok() ? "PASS" : "FAIL");
  return os.str();
}

namespace {

std::int64_t now_ns(std::chrono::steady_clock::time_point epoch) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now() - epoch)
      .count();
}

void spin_for_ns(std::int64_t ns) {
  auto until = std::chrono::steady_clock::now() + std::chrono::nanoseconds(ns);
  while (std::chrono::steady_clock::now() < until) {
  }
}

template <SlotOrdering Ordering>
FourSlotStressReport fourslot_stress_impl(std::uint64_t ops, std::uint64_t seed,
                                          bool emit_csv) {
  FourSlotStressReport report;
  FourSlotRegister<StressMessage, Ordering> reg;
  const auto epoch = std::chrono::steady_clock::now();

  std::vector<std::int64_t> write_done(ops + 1);  // write_done[seq]
  struct ReadSample {
    std::int64_t begin;
    std::int64_t end;
    std::uint64_t seq;
    bool intact;
  };
  std::vector<ReadSample> reads;
  reads.reserve(ops);
  std::atomic<std::uint64_t> writes_done{0};

  std::thread writer([&] {
    Rng rng(seed);
    std::uint64_t prev_steps = 0;
    for (std::uint64_t s = 1; s <= ops; ++s) {
      reg.write(make_stress_message(s));
      // Drain the store buffer before timestamping so "completed before the
      // read began" is sound wall-clock evidence even for the relaxed build.
      std::atomic_thread_fence(std::memory_order_seq_cst);
      write_done[s] = now_ns(epoch);
      writes_done.store(s, std::memory_order_release);
      std::uint64_t steps = reg.writer_steps() - prev_steps;
      prev_steps = reg.writer_steps();
      report.max_write_steps = std::max(report.max_write_steps, steps);
      if ((rng.next() & 0x3f) == 0) spin_for_ns(static_cast<std::int64_t>(rng.bounded(2000)));
    }
  });

  std::thread reader([&] {
    Rng rng(seed ^ 0xabcdef);
    std::uint64_t prev_steps = 0;
    std::uint64_t done = 0;
    while (done < ops) {
      ReadSample sample{};
      sample.begin = now_ns(epoch);
      auto value = reg.read();
      sample.end = now_ns(epoch);
      if (value) {
        sample.seq = value->seq;
        sample.intact = stress_message_intact(*value);
        reads.push_back(sample);
        ++done;
      }
      std::uint64_t steps = reg.reader_steps() - prev_steps;
      prev_steps = reg.reader_steps();
      report.max_read_steps = std::max(report.max_read_steps, steps);
      if ((rng.next() & 0x3f) == 0) spin_for_ns(static_cast<std::int64_t>(rng.bounded(2000)));
    }
  });

  writer.join();
  reader.join();

  report.writes = ops;
  report.reads = reads.size();
  std::uint64_t prev_seq = 0;
  for (const auto& r : reads) {
    if (!r.intact) ++report.integrity_violations;
    if (r.seq < prev_seq) ++report.monotonicity_violations;
    prev_seq = r.seq;
  }
  // freshness: a read must return at least the newest write completed before
  // the read began. write_done is monotone, so binary search by time.
  for (const auto& r : reads) {
    std::uint64_t floor_seq = 0;
    std::uint64_t lo = 1, hi = report.writes;
    while (lo <= hi) {
      std::uint64_t mid = (lo + hi) / 2;
      if (write_done[mid] != 0 && write_done[mid] < r.begin) {
        floor_seq = mid;
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
    if (r.seq < floor_seq) ++report.freshness_violations;
  }
  if (emit_csv) {
    report.csv_rows.reserve(reads.size() + 1);
    report.csv_rows.push_back("read_seq,read_begin_ns,read_end_ns,intact");
    for (const auto& r : reads) {
      std::ostringstream os;
      os << r.seq << "," << r.begin << "," << r.end << "," << (r.intact ? 1 : 0);
      report.csv_rows.push_back(os.str());
    }
  }
  return report;
}

}  // namespace

FourSlotStressReport run_fourslot_stress(std::uint64_t ops, std::uint64_t seed,
                                         bool relaxed_ordering, bool emit_csv) {
  return relaxed_ordering
             ? fourslot_stress_impl<SlotOrdering::AcqRel>(ops, seed, emit_csv)
             : fourslot_stress_impl<SlotOrdering::SeqCst>(ops, seed, emit_csv);
}

std::string FifoStressReport::summary() const {
  std::ostringstream os;
  os << "fifo: pushed=" << pushed << " popped=" << popped
     << " push_timeouts=" << push_timeouts << " pop_timeouts=" << pop_timeouts
     << " order_violations=" << order_violations
     << " conservation_violations=" << conservation_violations
     << " max_depth=" << max_depth << " verdict=" << (ok() ? "PASS" : "FAIL");
  return os.str();
}

FifoStressReport run_fifo_stress(std::uint64_t messages, std::size_t capacity,
                                 std::int64_t push_timeout_us,
                                 std::int64_t pop_timeout_us,
                                 std::int64_t pace_ns, std::uint64_t seed) {
  FifoStressReport report;
  BoundedFifo<StressMessage> fifo(capacity);
  std::atomic<std::uint64_t> pushed{0};

  std::thread producer([&] {
    Rng rng(seed);
    for (std::uint64_t s = 1; s <= messages; ++s) {
      if (pace_ns > 0) spin_for_ns(pace_ns + static_cast<std::int64_t>(rng.bounded(64)));
      if (fifo.push(make_stress_message(s),
                    push_timeout_us > 0 ? std::optional(push_timeout_us) : std::nullopt))
        pushed.fetch_add(1, std::memory_order_relaxed);
    }
  });

  std::thread consumer([&] {
    Rng rng(seed ^ 0x55aa55aa);
    std::uint64_t expect = 1;
    std::uint64_t got = 0;
    // The consumer stops once the producer is done and the ring drains.
    while (true) {
      if (pace_ns > 0) spin_for_ns(pace_ns + static_cast<std::int64_t>(rng.bounded(64)));
      auto v = fifo.pop(std::optional<std::int64_t>(
          pop_timeout_us > 0 ? pop_timeout_us : 50'000));
      if (!v) {
        if (pushed.load(std::memory_order_relaxed) == messages && fifo.size() == 0)
          break;
        if (pop_timeout_us > 0) continue;  // counted by the fifo itself
        continue;
      }
      ++got;
      if (!stress_message_intact(*v) || v->seq != expect) ++report.order_violations;
      expect = v->seq + 1;
      if (got >= messages) break;
    }
  });

  producer.join();
  consumer.join();

  report.pushed = fifo.pushes();
  report.popped = fifo.pops();
  report.push_timeouts = fifo.push_timeouts();
  report.pop_timeouts = fifo.pop_timeouts();
  report.max_depth = fifo.max_depth();
  if (report.pushed != report.popped + fifo.size()) ++report.conservation_violations;
  return report;
}

namespace {

// Model of the four-slot state machine at atomic-step granularity. Payload
// copies are split in two halves so an overlapping reader could observe a
// torn cell; the checker asserts the algorithm never lets that happen.
struct ModelState {
  int slot[2] = {0, 0};
  int latest = -1;
  int reading = 0;
  // cell contents: per half, the seq it carries (0 = initial)
  int cell_lo[2][2] = {};
  int cell_hi[2][2] = {};

  // writer program counter/locals
  int wpc = 0, wpair = 0, widx = 0, wseq = 0, wdone = 0;
  // reader program counter/locals
  int rpc = 0, rpair = 0, ridx = 0, rlo = 0, rhi = 0, rdone = 0;

  int reads_taken[2][2] = {};  // (value lo, value hi) per completed read
  int read_begin_wdone[2] = {};  // writes completed when each read began
};

struct ModelResult {
  std::uint64_t interleavings = 0;
  std::uint64_t torn = 0;
  std::uint64_t stale = 0;
};

void check_complete(const ModelState& s, ModelResult& r) {
  ++r.interleavings;
  for (int i = 0; i < s.rdone; ++i) {
    int lo = s.reads_taken[i][0], hi = s.reads_taken[i][1];
    if (lo != hi) {
      ++r.torn;
      continue;
    }
    // freshness: at least the last write completed before the read began,
    // and no newer than any write ever started (lo <= total writes).
    if (lo < s.read_begin_wdone[i] || lo > 2) ++r.stale;
  }
}

void step_writer(ModelState s, ModelResult& r);
void step_reader(ModelState s, ModelResult& r);

void explore(const ModelState& s, ModelResult& r) {
  bool w_can = s.wdone < 2;
  bool r_can = s.rdone < 2;
  if (!w_can && !r_can) {
    check_complete(s, r);
    return;
  }
  if (w_can) step_writer(s, r);
  if (r_can) step_reader(s, r);
}

void step_writer(ModelState s, ModelResult& r) {
  switch (s.wpc) {
    case 0: s.wpair = 1 - s.reading; s.wpc = 1; break;
    case 1: s.widx = 1 - s.slot[s.wpair]; s.wpc = 2; break;
    case 2: s.cell_lo[s.wpair][s.widx] = s.wseq + 1; s.wpc = 3; break;  // low half
    case 3: s.cell_hi[s.wpair][s.widx] = s.wseq + 1; s.wpc = 4; break;  // high half
    case 4:
      s.slot[s.wpair] = s.widx;
      s.wpc = 5;
      break;
    case 5:
      s.latest = s.wpair;
      ++s.wseq;
      ++s.wdone;
      s.wpc = 0;
      break;
  }
  explore(s, r);
}

void step_reader(ModelState s, ModelResult& r) {
  switch (s.rpc) {
    case 0:
      if (s.latest < 0) {  // empty register: reread later; treat as a no-op read
        s.read_begin_wdone[s.rdone] = s.wdone;
        s.reads_taken[s.rdone][0] = s.reads_taken[s.rdone][1] = 0;
        ++s.rdone;
        explore(s, r);
        return;
      }
      s.read_begin_wdone[s.rdone] = s.wdone;
      s.rpair = s.latest;
      s.rpc = 1;
      break;
    case 1: s.reading = s.rpair; s.rpc = 2; break;
    case 2: s.ridx = s.slot[s.rpair]; s.rpc = 3; break;
    case 3: s.rlo = s.cell_lo[s.rpair][s.ridx]; s.rpc = 4; break;
    case 4:
      s.rhi = s.cell_hi[s.rpair][s.ridx];
      s.reads_taken[s.rdone][0] = s.rlo;
      s.reads_taken[s.rdone][1] = s.rhi;
      ++s.rdone;
      s.rpc = 0;
      break;
  }
  explore(s, r);
}

}  // namespace

InterleavingReport enumerate_fourslot_interleavings() {
  ModelResult r;
  ModelState init;
  explore(init, r);
  InterleavingReport report;
  report.interleavings = r.interleavings;
  report.torn_reads = r.torn;
  report.stale_reads = r.stale;
  return report;
}

}  // namespace rtpipe
