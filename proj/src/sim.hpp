#ifndef RTPIPE_SIM_HPP
#define RTPIPE_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "model.hpp"
#include "solver.hpp"

namespace rtpipe {

// Where and how messages enter the pipeline. `inject_pipe` is the graph node
// receiving the wire arrivals (the head of a device chain, or a source task
// pipe directly).
struct ArrivalSpec {
  std::string name;  // workload/source label
  int inject_pipe = -1;
  double rate_per_s = 0.0;
  Micros jitter_us = 0;
  Micros phase_us = 0;
  std::vector<Micros> explicit_arrivals_us;  // overrides the periodic stream
};

struct SimOptions {
  Scheduler scheduler = Scheduler::Edf;
  Micros horizon_us = 1'000'000;
  std::uint64_t seed = 1;
  double exec_jitter_frac = 0.0;   // >0: execution uniform in [(1-f)*wcet, wcet]
  Micros transfer_latency_us = 0;  // constant cost on cross-sandbox edges
};

struct Hop {
  int pipe = -1;
  Micros t_read = -1;   // callback picked the message up
  Micros t_write = -1;  // output landed (includes any blocking on full FIFOs)
};

struct MessageRecord {
  std::uint64_t msg_id = 0;       // per-source arrival sequence
  std::uint64_t instance_id = 0;  // unique, forks get fresh ids
  int source_pipe = -1;
  std::string source_name;
  Micros t_arrival = 0;
  std::vector<Hop> hops;
  Micros t_exit = -1;       // <0: lost or still in flight at the horizon
  int lost_at_edge = -1;    // edge index when overwritten in a four-slot
  bool delivered() const { return t_exit >= 0; }
};

struct ExecSegment {
  int vcpu = -1;
  int pcpu = 0;
  Micros start = 0;
  Micros end = 0;
};

struct DispatchCandidate {
  int vcpu = -1;
  Micros key = 0;  // RMS: period; EDF: absolute deadline
};

struct DispatchRecord {
  Micros at = 0;
  int pcpu = 0;
  int chosen = -1;  // -1: idle
  std::vector<DispatchCandidate> ready;
};

struct ReplenishRecord {
  int vcpu = -1;
  Micros at = 0;
  Micros amount = 0;
};

struct EdgeCounters {
  long overwrites = 0;        // four-slot: unconsumed message replaced
  long producer_blocks = 0;   // fifo: push parked on a full ring
  long consumer_starved = 0;  // fifo: consumer idle while its producer is parked
  long pushes = 0;
  long pops = 0;
  int max_depth = 0;
};

struct SimVcpuInfo {
  std::string name;
  bool is_io = false;
  Micros budget_us = 0;  // io: dynamic cap u_io * period
  Micros period_us = 0;
  double u_io = 0.0;
  int pcpu = 0;
  std::vector<int> pipes;  // graph nodes this vcpu executes (empty for aux)
};

struct TraceLog {
  std::vector<SimVcpuInfo> vcpus;
  std::vector<MessageRecord> messages;
  std::vector<ExecSegment> segments;
  std::vector<DispatchRecord> dispatches;
  std::vector<ReplenishRecord> replenishments;
  std::vector<EdgeCounters> edge_counters;  // aligned with graph.edges
  Micros horizon_us = 0;
  std::uint64_t seed = 0;
  long offered = 0;
  std::string error;  // ConfigMismatch | UnschedulableOverrun
  bool ok() const { return error.empty(); }
};

// Deterministic event-driven execution of a tuned pipeline: sporadic-server
// main vcpus, dynamically budgeted io vcpus, four-slot or fifo edges.
// Identical inputs and seed give a bit-identical trace.
TraceLog run(const PipelineGraph& graph, const FunctionRepository& repo,
             const Platform& platform, const TunedAssignment& assignment,
             const std::vector<ArrivalSpec>& workload, const SimOptions& options);

}  // namespace rtpipe

#endif
