#ifndef RTPIPE_SOLVER_HPP
#define RTPIPE_SOLVER_HPP

#include <string>
#include <vector>

#include "model.hpp"

namespace rtpipe {

// Auxiliary reservation present on a PCPU but outside the pipeline (e.g.
// background load). Counts toward schedulability; when `busy` it also
// releases budget_us of work every period_us in simulation.
struct AuxVcpu {
  std::string name;
  Micros budget_us = 0;
  Micros period_us = 0;
  double utilization = 0.0;  // alternative to budget/period for accounting
  int count = 1;
  int pcpu = 0;
  int sandbox = 0;
  bool busy = false;
};

struct Platform {
  std::vector<DeviceThread> devices;
  std::vector<AuxVcpu> aux;
  int find_device(std::string_view name) const;
};

struct VcpuParams {
  bool is_io = false;
  Micros budget_us = 0;
  Micros period_us = 0;
  double u_io = 0.0;  // io: utilization bound
  double utilization() const {
    if (is_io) return u_io;
    return period_us > 0 ? static_cast<double>(budget_us) / static_cast<double>(period_us)
                         : 0.0;
  }
};

double rms_utilization_bound(int n);
bool rms_schedulable(const std::vector<VcpuParams>& vcpus);
bool edf_schedulable(const std::vector<VcpuParams>& vcpus);

// m_p * (ceil(T_c/T_p) + 1): room for every batch the producer can emit
// within one consumer period plus one for phase shift.
int size_fifo_buffer(int m_p, Micros t_p, Micros t_c);

struct PipeAssignment {
  Micros budget_us = 0;  // C
  Micros period_us = 0;  // T
  int batch = 1;         // m, messages forwarded per budget cycle
};

struct TunedAssignment {
  std::vector<PipeAssignment> pipes;  // aligned with graph.pipes
  std::vector<int> fifo_slots;        // aligned with graph.edges (0 on fourslot)
  bool feasible = false;
  std::vector<std::string> violations;  // first entry is the leading violation
  std::vector<Micros> path_delay_us;    // aligned with validation paths
  double min_tput_per_s = 0.0;
  double max_loss = 0.0;
  std::string status;  // empty | NonConvergent | InvalidGraph
  std::uint64_t hash = 0;
};

// Sum of periods along each path; device pipes contribute their reservation
// periods. Returns empty and sets `error` when a pipe lacks an assignment.
struct DelayBounds {
  std::vector<Micros> per_path;
  std::string error;
};
DelayBounds e2e_delay_bounds(const PipelineGraph& graph,
                             const std::vector<std::vector<int>>& paths,
                             const TunedAssignment& assignment);

// Worst-case overwrite fraction: max over edges with a task-pipe producer of
// (T_c - T_p)/T_c. Device producers forward at the device arrival rate, not
// once per period, so they do not saturate their consumers.
double max_loss_rate(const PipelineGraph& graph, const TunedAssignment& assignment);

// Min over pipes of m_i/T_i, in messages per second.
double min_throughput(const PipelineGraph& graph, const TunedAssignment& assignment);

struct PcpuLoad {
  int pcpu = 0;
  std::vector<VcpuParams> vcpus;
  std::vector<std::string> names;
  double utilization = 0.0;
  bool rms_ok = false;
  bool edf_ok = false;
};
std::vector<PcpuLoad> pcpu_loads(const PipelineGraph& graph,
                                 const TunedAssignment& assignment,
                                 const Platform& platform);

// Independent re-check of every end-to-end condition for the mode at hand.
// Kept free of the tuning logic so it can act as the solver's oracle.
struct ConditionReport {
  std::vector<std::string> violations;
  std::vector<Micros> path_delay_us;
  double min_tput_per_s = 0.0;
  double max_loss = 0.0;
  bool ok() const { return violations.empty(); }
};
ConditionReport check_conditions(const PipelineGraph& graph,
                                 const std::vector<std::vector<int>>& paths,
                                 const TunedAssignment& assignment,
                                 const Platform& platform, Scheduler scheduler);

struct SolveOptions {
  Scheduler scheduler = Scheduler::Edf;
  double alpha = 1.25;  // period scaling when unschedulable
  Micros default_period_us = 10000;
  int max_halvings_per_edge = 64;
  int max_scalings = 64;
  // Pinned (C,T,m) per pipe id; device pipes are implicitly pinned.
  std::vector<std::pair<std::string, PipeAssignment>> pinned;
};

TunedAssignment solve(const PipelineGraph& graph, const FunctionRepository& repo,
                      const Platform& platform, const SolveOptions& options);

}  // namespace rtpipe

#endif
