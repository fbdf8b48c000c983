#include "sim.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>

#include "rng.hpp"

namespace rtpipe {

namespace {

// Same-timestamp events apply in a fixed phase order, all before the next
// dispatch pass, so the schedule never depends on queue insertion order.
enum EvPhase {
  PhReplenish = 0,
  PhDeliver = 1,
  PhArrival = 2,
  PhAuxRelease = 3,
  PhSegmentEnd = 4,
};

struct Event {
  Micros t = 0;
  int phase = 0;
  std::uint64_t seq = 0;
  int a = 0;        // vcpu / arrival-spec / edge index
  int b = 0;        // generation or arrival ordinal
  Micros amount = 0;
  int inst = -1;    // instance for deferred delivery
};

struct EventOrder {
  bool operator()(const Event& x, const Event& y) const {
    if (x.t != y.t) return x.t > y.t;
    if (x.phase != y.phase) return x.phase > y.phase;
    return x.seq > y.seq;
  }
};

struct Job {
  int node = -1;
  int inst = -1;  // -1: aux busy work
  Micros remaining = 0;
  Micros t_read = -1;
};

struct VcpuState {
  // static
  std::string name;
  bool is_io = false;
  bool is_aux = false;
  bool busy_aux = false;
  Micros cap = 0;
  Micros period = 0;
  double u_io = 0.0;
  int pcpu = 0;
  std::vector<int> nodes;

  // dynamic
  Micros budget = 0;
  bool ready = false;
  Micros deadline = 0;
  bool io_window_open = false;  // single replenishment pending
  bool blocked = false;
  std::vector<std::pair<int, int>> pending_emits;  // (edge, instance)
  Job job;
  Micros aux_pending = 0;
};

struct EdgeState {
  BufferKind kind = BufferKind::FourSlot;
  int cap = 0;
  std::deque<int> fifo;
  int fs_inst = -1;
  bool fs_fresh = false;
  bool filled_once = false;
  int producer_vcpu = -1;
  int consumer_vcpu = -1;
};

struct PcpuState {
  int pcpu = 0;
  int running = -1;
  Micros seg_start = 0;
  int seg_gen = 0;
  bool dirty = false;
  std::vector<int> vcpus;
};

class Simulator {
 public:
  Simulator(const PipelineGraph& graph, const FunctionRepository& repo,
            const Platform& platform, const TunedAssignment& assignment,
            const std::vector<ArrivalSpec>& workload, const SimOptions& opts)
      : graph_(graph), repo_(repo), platform_(platform), assign_(assignment),
        workload_(workload), opts_(opts), rng_(opts.seed) {}

  TraceLog run() {
    trace_.horizon_us = opts_.horizon_us;
    trace_.seed = opts_.seed;
    if (!setup()) return trace_;

    for (size_t w = 0; w < workload_.size(); ++w) schedule_arrival(static_cast<int>(w), 0);
    for (size_t v = 0; v < vcpus_.size(); ++v)
      if (vcpus_[v].busy_aux)
        push_event({0, PhAuxRelease, next_seq_++, static_cast<int>(v), 0, 0, -1});

    while (!events_.empty()) {
      Micros t = events_.top().t;
      if (t > opts_.horizon_us) break;
      while (!events_.empty() && events_.top().t == t) {
        Event ev = events_.top();
        events_.pop();
        handle(ev);
        if (!trace_.ok()) return trace_;
      }
      dispatch_dirty(t);
    }
    // Close any segment still open at the horizon.
    for (auto& pc : pcpus_)
      if (pc.running >= 0) close_segment(pc, opts_.horizon_us, /*natural=*/false);
    finalize_trace();
    return trace_;
  }

 private:
  // ---- setup ----
  bool setup() {
    if (assign_.pipes.size() != graph_.pipes.size()) {
      trace_.error = "ConfigMismatch: assignment covers " +
                     std::to_string(assign_.pipes.size()) + " pipes, graph has " +
                     std::to_string(graph_.pipes.size());
      return false;
    }
    std::uint64_t h = graph_hash(graph_);
    if (assign_.hash != 0 && assign_.hash != h) {
      trace_.error = "ConfigMismatch: assignment solved for a different graph";
      return false;
    }

    // vcpu order fixes the dispatch tie-break: aux entries, then device
    // entities, then task pipes in graph order.
    for (const auto& aux : platform_.aux) {
      for (int k = 0; k < std::max(1, aux.count); ++k) {
        VcpuState v;
        v.name = aux.count > 1 ? aux.name + "#" + std::to_string(k) : aux.name;
        v.is_aux = true;
        v.busy_aux = aux.busy;
        v.cap = aux.budget_us;
        v.period = aux.period_us;
        v.pcpu = aux.pcpu;
        v.budget = v.cap;
        if (v.busy_aux && (v.cap <= 0 || v.period <= 0)) {
          trace_.error = "ConfigMismatch: busy aux vcpu " + v.name +
                         " needs explicit budget and period";
          return false;
        }
        vcpus_.push_back(std::move(v));
      }
    }
    std::vector<int> device_vcpu(platform_.devices.size(), -1);
    for (size_t d = 0; d < platform_.devices.size(); ++d) {
      const auto& dev = platform_.devices[d];
      VcpuState v;
      v.name = dev.name;
      v.is_io = dev.is_io;
      v.u_io = dev.u_io;
      v.cap = dev.effective_budget(platform_.devices);
      v.period = dev.effective_period(platform_.devices);
      v.pcpu = dev.pcpu;
      v.budget = v.cap;
      if (v.cap <= 0 || v.period <= 0) {
        trace_.error = "ConfigMismatch: device " + dev.name + " lacks a reservation";
        return false;
      }
      device_vcpu[d] = static_cast<int>(vcpus_.size());
      vcpus_.push_back(std::move(v));
    }
    node_vcpu_.assign(graph_.pipes.size(), -1);
    node_cost_.assign(graph_.pipes.size(), 0);
    for (size_t i = 0; i < graph_.pipes.size(); ++i) {
      const auto& pipe = graph_.pipes[i];
      if (pipe.kind == PipeKind::Device) {
        if (pipe.device_index < 0 ||
            pipe.device_index >= static_cast<int>(platform_.devices.size())) {
          trace_.error = "ConfigMismatch: device pipe " + pipe.id + " unresolved";
          return false;
        }
        int v = device_vcpu[pipe.device_index];
        node_vcpu_[i] = v;
        vcpus_[v].nodes.push_back(static_cast<int>(i));
        node_cost_[i] = platform_.devices[pipe.device_index].wcet_us;
      } else {
        const auto* f = repo_.find(pipe.function);
        if (!f) {
          trace_.error = "ConfigMismatch: unknown function " + pipe.function;
          return false;
        }
        VcpuState v;
        v.name = pipe.id;
        v.cap = assign_.pipes[i].budget_us;
        v.period = assign_.pipes[i].period_us;
        v.pcpu = pipe.pcpu;
        v.budget = v.cap;
        if (v.cap <= 0 || v.period <= 0) {
          trace_.error = "ConfigMismatch: pipe " + pipe.id + " has no assignment";
          return false;
        }
        node_vcpu_[i] = static_cast<int>(vcpus_.size());
        v.nodes.push_back(static_cast<int>(i));
        vcpus_.push_back(std::move(v));
      }
      if (node_cost_[i] <= 0 && graph_.pipes[i].kind == PipeKind::Task)
        node_cost_[i] = repo_.find(graph_.pipes[i].function)->wcet_us;
      if (node_cost_[i] <= 0) node_cost_[i] = 1;
    }

    edges_.resize(graph_.edges.size());
    node_in_edges_.assign(graph_.pipes.size(), {});
    node_out_edges_.assign(graph_.pipes.size(), {});
    for (size_t e = 0; e < graph_.edges.size(); ++e) {
      const auto& edge = graph_.edges[e];
      edges_[e].kind = edge.buffer;
      edges_[e].cap = edge.buffer == BufferKind::Fifo
                          ? std::max(1, e < assign_.fifo_slots.size()
                                            ? assign_.fifo_slots[e]
                                            : 1)
                          : 1;
      edges_[e].producer_vcpu = node_vcpu_[edge.producer];
      edges_[e].consumer_vcpu = node_vcpu_[edge.consumer];
      node_in_edges_[edge.consumer].push_back(static_cast<int>(e));
      node_out_edges_[edge.producer].push_back(static_cast<int>(e));
    }
    wire_.assign(graph_.pipes.size(), {});
    trace_.edge_counters.assign(graph_.edges.size(), {});

    std::map<int, int> pcpu_index;
    for (size_t v = 0; v < vcpus_.size(); ++v) {
      auto [it, fresh] = pcpu_index.try_emplace(vcpus_[v].pcpu,
                                                static_cast<int>(pcpus_.size()));
      if (fresh) pcpus_.push_back({vcpus_[v].pcpu, -1, 0, 0, false, {}});
      pcpus_[it->second].vcpus.push_back(static_cast<int>(v));
      vcpu_pcpu_.push_back(it->second);
    }

    for (const auto& v : vcpus_) {
      SimVcpuInfo info;
      info.name = v.name;
      info.is_io = v.is_io;
      info.budget_us = v.cap;
      info.period_us = v.period;
      info.u_io = v.u_io;
      info.pcpu = v.pcpu;
      info.pipes = v.nodes;
      trace_.vcpus.push_back(std::move(info));
    }

    for (const auto& w : workload_) {
      if (w.inject_pipe < 0 || w.inject_pipe >= static_cast<int>(graph_.pipes.size())) {
        trace_.error = "ConfigMismatch: workload " + w.name + " targets no pipe";
        return false;
      }
    }
    return true;
  }

  // ---- events ----
  void push_event(Event ev) { events_.push(ev); }

  void schedule_arrival(int w, int k) {
    const auto& spec = workload_[w];
    Micros t;
    if (!spec.explicit_arrivals_us.empty()) {
      if (k >= static_cast<int>(spec.explicit_arrivals_us.size())) return;
      t = spec.explicit_arrivals_us[k];
    } else {
      if (spec.rate_per_s <= 0) return;
      Micros period = static_cast<Micros>(1e6 / spec.rate_per_s + 0.5);
      if (period <= 0) period = 1;
      t = spec.phase_us + static_cast<Micros>(k) * period;
      if (spec.jitter_us > 0) t += arrival_rng(w).bounded(spec.jitter_us + 1);
    }
    if (t > opts_.horizon_us) return;
    push_event({t, PhArrival, next_seq_++, w, k, 0, -1});
  }

  Rng& arrival_rng(int w) {
    while (static_cast<int>(arrival_rngs_.size()) <= w)
      arrival_rngs_.emplace_back(opts_.seed ^ fnv1a64(workload_[arrival_rngs_.size()].name.data(),
                                                      workload_[arrival_rngs_.size()].name.size()));
    return arrival_rngs_[w];
  }

  void handle(const Event& ev) {
    switch (ev.phase) {
      case PhReplenish: on_replenish(ev); break;
      case PhDeliver: on_deliver(ev); break;
      case PhArrival: on_arrival(ev); break;
      case PhAuxRelease: on_aux_release(ev); break;
      case PhSegmentEnd: on_segment_end(ev); break;
      default: break;
    }
  }

  void on_replenish(const Event& ev) {
    auto& v = vcpus_[ev.a];
    if (v.is_io) {
      v.budget = v.cap;
      v.io_window_open = false;
    } else {
      v.budget = std::min(v.cap, v.budget + ev.amount);
    }
    trace_.replenishments.push_back({ev.a, ev.t, ev.amount});
    update_ready(ev.a, ev.t);
  }

  void on_deliver(const Event& ev) { insert_into_edge(ev.a, ev.inst, ev.t, true); }

  void on_arrival(const Event& ev) {
    const auto& spec = workload_[ev.a];
    MessageRecord rec;
    rec.msg_id = ++source_seq_[ev.a];
    rec.instance_id = next_instance_++;
    rec.source_pipe = spec.inject_pipe;
    rec.source_name = spec.name;
    rec.t_arrival = ev.t;
    int inst = static_cast<int>(trace_.messages.size());
    trace_.messages.push_back(std::move(rec));
    ++trace_.offered;
    wire_[spec.inject_pipe].push_back(inst);
    if (wire_[spec.inject_pipe].size() > (1u << 20)) {
      trace_.error = "UnschedulableOverrun: wire backlog at " +
                     graph_.pipes[spec.inject_pipe].id;
      return;
    }
    update_ready(node_vcpu_[spec.inject_pipe], ev.t);
    schedule_arrival(ev.a, ev.b + 1);
  }

  void on_aux_release(const Event& ev) {
    auto& v = vcpus_[ev.a];
    v.aux_pending += v.cap;
    if (ev.t + v.period <= opts_.horizon_us)
      push_event({ev.t + v.period, PhAuxRelease, next_seq_++, ev.a, 0, 0, -1});
    update_ready(ev.a, ev.t);
  }

  void on_segment_end(const Event& ev) {
    auto& pc = pcpus_[vcpu_pcpu_[ev.a]];
    if (pc.running != ev.a || pc.seg_gen != ev.b) return;  // stale
    close_segment(pc, ev.t, /*natural=*/true);
    pc.dirty = true;
  }

  // ---- vcpu readiness ----
  bool node_has_input(int node) const {
    if (!wire_[node].empty()) return true;
    for (int e : node_in_edges_[node]) {
      const auto& es = edges_[e];
      if (es.kind == BufferKind::Fifo ? !es.fifo.empty() : es.fs_fresh) return true;
    }
    return false;
  }

  bool vcpu_has_work(const VcpuState& v) const {
    if (v.blocked) return false;
    if (v.job.remaining > 0) return true;
    if (v.is_aux) return v.aux_pending > 0;
    for (int n : v.nodes)
      if (node_has_input(n)) return true;
    return false;
  }

  void update_ready(int vi, Micros t) {
    auto& v = vcpus_[vi];
    bool work = vcpu_has_work(v);
    if (v.is_io && work && !v.io_window_open && !v.blocked) {
      // io activation: dynamic budget, one replenishment per window
      v.budget = v.cap;
      v.io_window_open = true;
      v.deadline = t + v.period;
      push_event({t + v.period, PhReplenish, next_seq_++, vi, 0, v.cap, -1});
    }
    bool now_ready = work && v.budget > 0;
    if (now_ready && !v.ready && !v.is_io) v.deadline = t + v.period;
    if (now_ready != v.ready) {
      v.ready = now_ready;
      pcpus_[vcpu_pcpu_[vi]].dirty = true;
    }
  }

  // ---- execution ----
  Micros exec_cost(int node) {
    Micros w = node_cost_[node];
    if (opts_.exec_jitter_frac > 0) {
      Micros slack = static_cast<Micros>(opts_.exec_jitter_frac * static_cast<double>(w));
      if (slack > 0) w -= static_cast<Micros>(rng_.bounded(slack + 1));
      if (w < 1) w = 1;
    }
    return w;
  }

  bool acquire_job(int vi, Micros t) {
    auto& v = vcpus_[vi];
    if (v.job.remaining > 0) return true;
    if (v.is_aux) {
      if (v.aux_pending <= 0) return false;
      v.job = {-1, -1, v.aux_pending, t};
      return true;
    }
    for (int n : v.nodes) {
      int inst = -1;
      if (!wire_[n].empty()) {
        inst = wire_[n].front();
        wire_[n].pop_front();
      } else {
        for (int e : node_in_edges_[n]) {
          auto& es = edges_[e];
          if (es.kind == BufferKind::Fifo) {
            if (es.fifo.empty()) continue;
            inst = es.fifo.front();
            es.fifo.pop_front();
            ++trace_.edge_counters[e].pops;
            resume_blocked_producer(e, t);
          } else {
            if (!es.fs_fresh) continue;
            inst = es.fs_inst;
            es.fs_fresh = false;
          }
          break;
        }
      }
      if (inst >= 0) {
        v.job = {n, inst, exec_cost(n), t};
        return true;
      }
    }
    return false;
  }

  void close_segment(PcpuState& pc, Micros t, bool natural) {
    int vi = pc.running;
    auto& v = vcpus_[vi];
    Micros consumed = t - pc.seg_start;
    pc.running = -1;
    ++pc.seg_gen;
    if (consumed <= 0) return;  // preempted before making progress
    v.budget -= consumed;
    trace_.segments.push_back({vi, pc.pcpu, pc.seg_start, t});
    if (!v.is_io)  // sporadic server: consumption returns one period later
      push_event({pc.seg_start + v.period, PhReplenish, next_seq_++, vi, 0, consumed, -1});
    if (v.is_aux && v.job.node < 0) {
      v.aux_pending -= consumed;
      v.job.remaining -= consumed;
      if (v.job.remaining <= 0) v.job = {};
    } else {
      v.job.remaining -= consumed;
      if (natural && v.job.remaining <= 0 && v.job.inst >= 0) {
        Job done = v.job;
        v.job = {};
        complete_job(vi, done, t);
      }
    }
    update_ready(vi, t);
  }

  void complete_job(int vi, const Job& job, Micros t) {
    const auto& outs = node_out_edges_[job.node];
    if (outs.empty()) {
      auto& rec = trace_.messages[job.inst];
      rec.hops.push_back({job.node, job.t_read, t});
      rec.t_exit = t;
      return;
    }
    auto& v = vcpus_[vi];
    // Fan-out duplicates the message; the first branch keeps the instance.
    std::vector<std::pair<int, int>> emits;
    emits.reserve(outs.size());
    for (size_t k = 0; k < outs.size(); ++k) {
      int inst = job.inst;
      if (k > 0) {
        MessageRecord fork = trace_.messages[job.inst];
        fork.instance_id = next_instance_++;
        inst = static_cast<int>(trace_.messages.size());
        trace_.messages.push_back(std::move(fork));
      }
      trace_.messages[inst].hops.push_back({job.node, job.t_read, -1});
      emits.emplace_back(outs[k], inst);
    }
    v.pending_emits = std::move(emits);
    process_emits(vi, t);
  }

  void process_emits(int vi, Micros t) {
    auto& v = vcpus_[vi];
    while (!v.pending_emits.empty()) {
      auto [e, inst] = v.pending_emits.front();
      const auto& edge = graph_.edges[e];
      Micros latency = opts_.transfer_latency_us;
      bool cross = graph_.pipes[edge.producer].sandbox != graph_.pipes[edge.consumer].sandbox;
      if (latency > 0 && cross) {
        trace_.messages[inst].hops.back().t_write = t;
        push_event({t + latency, PhDeliver, next_seq_++, e, 0, 0, inst});
        v.pending_emits.erase(v.pending_emits.begin());
        continue;
      }
      if (!insert_into_edge(e, inst, t, false)) {
        // fifo full: park the producer until the consumer pops
        if (!v.blocked) {
          v.blocked = true;
          ++trace_.edge_counters[e].producer_blocks;
          note_starvation(vi);
          update_ready(vi, t);
        }
        return;
      }
      trace_.messages[inst].hops.back().t_write = t;
      v.pending_emits.erase(v.pending_emits.begin());
    }
    if (v.blocked) {
      v.blocked = false;
      update_ready(vi, t);
    }
  }

  // Returns false when a fifo edge is full (caller blocks).
  bool insert_into_edge(int e, int inst, Micros t, bool from_channel) {
    auto& es = edges_[e];
    auto& ctr = trace_.edge_counters[e];
    if (es.kind == BufferKind::Fifo) {
      if (static_cast<int>(es.fifo.size()) >= es.cap) {
        if (from_channel) {
          channel_backlog_[e].push_back(inst);
          return true;
        }
        return false;
      }
      es.fifo.push_back(inst);
      ++ctr.pushes;
      es.filled_once = true;
      ctr.max_depth = std::max(ctr.max_depth, static_cast<int>(es.fifo.size()));
      if (from_channel) trace_.messages[inst].hops.back().t_write = t;
    } else {
      if (es.fs_fresh && es.fs_inst >= 0) {
        auto& lost = trace_.messages[es.fs_inst];
        lost.lost_at_edge = e;
        ++ctr.overwrites;
      }
      es.fs_inst = inst;
      es.fs_fresh = true;
      ++ctr.pushes;
      es.filled_once = true;
      ctr.max_depth = std::max(ctr.max_depth, 1);
      if (from_channel) trace_.messages[inst].hops.back().t_write = t;
    }
    update_ready(es.consumer_vcpu, t);
    return true;
  }

  void resume_blocked_producer(int e, Micros t) {
    auto& es = edges_[e];
    auto backlog = channel_backlog_.find(e);
    if (backlog != channel_backlog_.end() && !backlog->second.empty()) {
      int inst = backlog->second.front();
      backlog->second.pop_front();
      insert_into_edge(e, inst, t, true);
      return;
    }
    int p = es.producer_vcpu;
    if (p >= 0 && vcpus_[p].blocked && !vcpus_[p].pending_emits.empty() &&
        vcpus_[p].pending_emits.front().first == e)
      process_emits(p, t);
  }

  // A consumer sitting budget-ready on an empty edge while its producer is
  // parked on a full one marks a chain stall.
  void note_starvation(int producer_vcpu) {
    for (int n : vcpus_[producer_vcpu].nodes) {
      for (int e : node_out_edges_[n]) {
        const auto& es = edges_[e];
        if (es.kind != BufferKind::Fifo || !es.filled_once) continue;
        if (!es.fifo.empty()) continue;
        const auto& cons = vcpus_[es.consumer_vcpu];
        if (cons.budget > 0 && !vcpu_has_work(cons))
          ++trace_.edge_counters[e].consumer_starved;
      }
    }
  }

  // ---- dispatch ----
  std::pair<Micros, int> priority_key(int vi) const {
    const auto& v = vcpus_[vi];
    Micros key = opts_.scheduler == Scheduler::Rms ? v.period : v.deadline;
    return {key, vi};
  }

  void dispatch_dirty(Micros t) {
    bool any = true;
    while (any) {
      any = false;
      for (auto& pc : pcpus_) {
        if (!pc.dirty) continue;
        pc.dirty = false;
        any = true;
        dispatch(pc, t);
      }
    }
  }

  void dispatch(PcpuState& pc, Micros t) {
    int best = -1;
    std::pair<Micros, int> best_key{0, 0};
    for (int vi : pc.vcpus) {
      if (!vcpus_[vi].ready) continue;
      auto key = priority_key(vi);
      if (best < 0 || key < best_key) {
        best = vi;
        best_key = key;
      }
    }
    if (pc.running >= 0) {
      if (best < 0 || !(best_key < priority_key(pc.running))) return;
      close_segment(pc, t, /*natural=*/false);  // preempt; running stays ready
      // re-evaluate: closing may have changed readiness
      dispatch(pc, t);
      return;
    }
    if (best < 0) return;
    auto& v = vcpus_[best];
    if (!acquire_job(best, t)) {
      update_ready(best, t);
      pc.dirty = true;
      return;
    }
    DispatchRecord dr;
    dr.at = t;
    dr.pcpu = pc.pcpu;
    dr.chosen = best;
    for (int vi : pc.vcpus)
      if (vcpus_[vi].ready) dr.ready.push_back({vi, priority_key(vi).first});
    trace_.dispatches.push_back(std::move(dr));

    pc.running = best;
    pc.seg_start = t;
    ++pc.seg_gen;
    Micros len = std::min(v.job.remaining, v.budget);
    push_event({t + len, PhSegmentEnd, next_seq_++, best, pc.seg_gen, 0, -1});
  }

  void finalize_trace() {
    std::sort(trace_.segments.begin(), trace_.segments.end(),
              [](const ExecSegment& a, const ExecSegment& b) {
                if (a.start != b.start) return a.start < b.start;
                return a.vcpu < b.vcpu;
              });
  }

  const PipelineGraph& graph_;
  const FunctionRepository& repo_;
  const Platform& platform_;
  const TunedAssignment& assign_;
  const std::vector<ArrivalSpec>& workload_;
  const SimOptions& opts_;
  Rng rng_;

  TraceLog trace_;
  std::vector<VcpuState> vcpus_;
  std::vector<int> vcpu_pcpu_;
  std::vector<PcpuState> pcpus_;
  std::vector<EdgeState> edges_;
  std::vector<std::vector<int>> node_in_edges_;
  std::vector<std::vector<int>> node_out_edges_;
  std::vector<int> node_vcpu_;
  std::vector<Micros> node_cost_;
  std::vector<std::deque<int>> wire_;
  std::map<int, std::deque<int>> channel_backlog_;
  std::map<int, std::uint64_t> source_seq_;
  std::vector<Rng> arrival_rngs_;
  std::priority_queue<Event, std::vector<Event>, EventOrder> events_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t next_instance_ = 1;
};

}  // namespace

TraceLog run(const PipelineGraph& graph, const FunctionRepository& repo,
             const Platform& platform, const TunedAssignment& assignment,
             const std::vector<ArrivalSpec>& workload, const SimOptions& options) {
  Simulator sim(graph, repo, platform, assignment, workload, options);
  return sim.run();
}

}  // namespace rtpipe
