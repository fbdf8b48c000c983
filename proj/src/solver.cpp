#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace rtpipe {

int Platform::find_device(std::string_view name) const {
  for (size_t i = 0; i < devices.size(); ++i)
    if (devices[i].name == name) return static_cast<int>(i);
  return -1;
}

double rms_utilization_bound(int n) {
  if (n <= 0) return 1.0;
  return n * (std::pow(2.0, 1.0 / n) - 1.0);
}

namespace {
double total_utilization(const std::vector<VcpuParams>& vcpus) {
  double u = 0;
  for (const auto& v : vcpus) u += v.utilization();
  return u;
}
}  // namespace

bool rms_schedulable(const std::vector<VcpuParams>& vcpus) {
  return total_utilization(vcpus) <= rms_utilization_bound(static_cast<int>(vcpus.size()));
}

bool edf_schedulable(const std::vector<VcpuParams>& vcpus) {
  return total_utilization(vcpus) <= 1.0;
}

int size_fifo_buffer(int m_p, Micros t_p, Micros t_c) {
  Micros ratio = (t_c + t_p - 1) / t_p;  // ceil
  return static_cast<int>(m_p * (ratio + 1));
}

DelayBounds e2e_delay_bounds(const PipelineGraph& graph,
                             const std::vector<std::vector<int>>& paths,
                             const TunedAssignment& assignment) {
  DelayBounds out;
  for (const auto& path : paths) {
    Micros sum = 0;
    for (int p : path) {
      if (p < 0 || p >= static_cast<int>(assignment.pipes.size()) ||
          assignment.pipes[p].period_us <= 0) {
        out.error = "MissingAssignment: " + graph.pipes[p].id;
        out.per_path.clear();
        return out;
      }
      sum += assignment.pipes[p].period_us;
    }
    out.per_path.push_back(sum);
  }
  return out;
}

double max_loss_rate(const PipelineGraph& graph, const TunedAssignment& assignment) {
  double worst = 0.0;
  for (const auto& e : graph.edges) {
    if (graph.pipes[e.producer].kind != PipeKind::Task) continue;
    Micros tp = assignment.pipes[e.producer].period_us;
    Micros tc = assignment.pipes[e.consumer].period_us;
    if (tc > tp && tc > 0)
      worst = std::max(worst, static_cast<double>(tc - tp) / static_cast<double>(tc));
  }
  return worst;
}

double min_throughput(const PipelineGraph& graph, const TunedAssignment& assignment) {
  double lo = 0.0;
  bool first = true;
  for (size_t i = 0; i < graph.pipes.size(); ++i) {
    const auto& a = assignment.pipes[i];
    if (a.period_us <= 0) continue;
    double rate = 1e6 * static_cast<double>(a.batch) / static_cast<double>(a.period_us);
    if (first || rate < lo) lo = rate;
    first = false;
  }
  return lo;
}

std::vector<PcpuLoad> pcpu_loads(const PipelineGraph& graph,
                                 const TunedAssignment& assignment,
                                 const Platform& platform) {
  std::map<int, PcpuLoad> by_pcpu;
  auto slot = [&by_pcpu](int pcpu) -> PcpuLoad& {
    auto& l = by_pcpu[pcpu];
    l.pcpu = pcpu;
    return l;
  };
  for (const auto& d : platform.devices) {
    VcpuParams v;
    v.is_io = d.is_io;
    if (d.is_io) {
      v.u_io = d.u_io;
      v.period_us = d.effective_period(platform.devices);
    } else {
      v.budget_us = d.budget_us;
      v.period_us = d.period_us;
    }
    auto& l = slot(d.pcpu);
    l.vcpus.push_back(v);
    l.names.push_back(d.name);
  }
  for (const auto& a : platform.aux) {
    VcpuParams v;
    if (a.period_us > 0) {
      v.budget_us = a.budget_us;
      v.period_us = a.period_us;
    } else {
      v.is_io = true;  // utilization-only entry
      v.u_io = a.utilization / std::max(1, a.count);
    }
    for (int k = 0; k < std::max(1, a.count); ++k) {
      auto& l = slot(a.pcpu);
      l.vcpus.push_back(v);
      l.names.push_back(a.count > 1 ? a.name + "#" + std::to_string(k) : a.name);
    }
  }
  for (size_t i = 0; i < graph.pipes.size(); ++i) {
    if (graph.pipes[i].kind != PipeKind::Task) continue;
    VcpuParams v;
    v.budget_us = assignment.pipes[i].budget_us;
    v.period_us = assignment.pipes[i].period_us;
    auto& l = slot(graph.pipes[i].pcpu);
    l.vcpus.push_back(v);
    l.names.push_back(graph.pipes[i].id);
  }
  std::vector<PcpuLoad> out;
  for (auto& [pcpu, load] : by_pcpu) {
    load.utilization = total_utilization(load.vcpus);
    load.rms_ok = rms_schedulable(load.vcpus);
    load.edf_ok = edf_schedulable(load.vcpus);
    out.push_back(std::move(load));
  }
  return out;
}

ConditionReport check_conditions(const PipelineGraph& graph,
                                 const std::vector<std::vector<int>>& paths,
                                 const TunedAssignment& assignment,
                                 const Platform& platform, Scheduler scheduler) {
  ConditionReport report;
  auto bounds = e2e_delay_bounds(graph, paths, assignment);
  if (!bounds.error.empty()) {
    report.violations.push_back(bounds.error);
    return report;
  }
  report.path_delay_us = bounds.per_path;
  report.min_tput_per_s = min_throughput(graph, assignment);
  report.max_loss = max_loss_rate(graph, assignment);

  for (size_t i = 0; i < graph.pipes.size(); ++i) {
    const auto& a = assignment.pipes[i];
    if (a.period_us <= 0 || a.budget_us <= 0) {
      report.violations.push_back("MissingAssignment: " + graph.pipes[i].id);
      return report;
    }
    if (a.budget_us >= a.period_us)
      report.violations.push_back("budget: " + graph.pipes[i].id + " has C >= T");
  }

  const QosSpec& qos = graph.qos;
  if (!qos.best_effort) {
    for (size_t i = 0; i < paths.size(); ++i) {
      if (bounds.per_path[i] > qos.e2e_delay_us) {
        std::ostringstream os;
        os << "delay: path ";
        for (int p : paths[i]) os << graph.pipes[p].id << (p == paths[i].back() ? "" : ">");
        os << " bound " << bounds.per_path[i] << "us exceeds e2e_delay "
           << qos.e2e_delay_us << "us";
        report.violations.push_back(os.str());
      }
    }
    if (graph.mode == CommMode::Fifo) {
      if (report.min_tput_per_s < qos.e2e_tput_per_s) {
        std::ostringstream os;
        os << "throughput: min rate " << report.min_tput_per_s
           << "/s below e2e_tput " << qos.e2e_tput_per_s << "/s";
        report.violations.push_back(os.str());
      }
    } else if (report.max_loss > qos.loss_rate) {
      std::ostringstream os;
      os << "loss: worst-case fraction " << report.max_loss << " exceeds loss_rate "
         << qos.loss_rate;
      report.violations.push_back(os.str());
    }
  }

  if (graph.mode == CommMode::Fifo) {
    for (size_t e = 0; e < graph.edges.size(); ++e) {
      const auto& edge = graph.edges[e];
      int need = size_fifo_buffer(assignment.pipes[edge.producer].batch,
                                  assignment.pipes[edge.producer].period_us,
                                  assignment.pipes[edge.consumer].period_us);
      int have = e < assignment.fifo_slots.size() ? assignment.fifo_slots[e] : 0;
      if (have < need)
        report.violations.push_back(
            "buffer: " + graph.pipes[edge.producer].id + ">" +
            graph.pipes[edge.consumer].id + " sized " + std::to_string(have) +
            " < required " + std::to_string(need));
    }
  }

  for (const auto& load : pcpu_loads(graph, assignment, platform)) {
    bool ok = scheduler == Scheduler::Rms ? load.rms_ok : load.edf_ok;
    if (!ok) {
      std::ostringstream os;
      os << "schedulability: pcpu " << load.pcpu << " utilization "
         << load.utilization << " fails " << to_string(scheduler) << " test with "
         << load.vcpus.size() << " vcpus";
      report.violations.push_back(os.str());
    }
  }
  return report;
}

namespace {

// Deterministic topological order: repeatedly take the smallest-id ready node.
std::vector<int> topo_order(const PipelineGraph& graph) {
  size_t n = graph.pipes.size();
  std::vector<int> indegree(n, 0);
  for (const auto& e : graph.edges) indegree[e.consumer]++;
  auto cmp = [&graph](int a, int b) { return graph.pipes[a].id < graph.pipes[b].id; };
  std::vector<int> ready;
  for (size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(static_cast<int>(i));
  std::sort(ready.begin(), ready.end(), cmp);
  std::vector<int> order;
  while (!ready.empty()) {
    int node = ready.front();
    ready.erase(ready.begin());
    order.push_back(node);
    std::vector<int> next;
    for (const auto& e : graph.edges)
      if (e.producer == node && --indegree[e.consumer] == 0)
        next.push_back(e.consumer);
    std::sort(next.begin(), next.end(), cmp);
    ready.insert(ready.end(), next.begin(), next.end());
    std::sort(ready.begin(), ready.end(), cmp);
  }
  return order;
}

struct Tuner {
  const PipelineGraph& graph;
  const FunctionRepository& repo;
  const Platform& platform;
  const SolveOptions& opts;
  const std::vector<std::vector<int>>& paths;
  TunedAssignment& a;

  bool schedulable() const {
    for (const auto& load : pcpu_loads(graph, a, platform)) {
      bool ok = opts.scheduler == Scheduler::Rms ? load.rms_ok : load.edf_ok;
      if (!ok) return false;
    }
    return true;
  }

  Micros worst_path_delay() const {
    Micros worst = 0;
    for (const auto& path : paths) {
      Micros sum = 0;
      for (int p : path) sum += a.pipes[p].period_us;
      worst = std::max(worst, sum);
    }
    return worst;
  }

  // Longest path: pipe count first, then total period, then lexicographic ids.
  const std::vector<int>& longest_path() const {
    const std::vector<int>* best = &paths.front();
    Micros best_sum = 0;
    for (int p : *best) best_sum += a.pipes[p].period_us;
    for (const auto& path : paths) {
      Micros sum = 0;
      for (int p : path) sum += a.pipes[p].period_us;
      if (path.size() > best->size() ||
          (path.size() == best->size() && sum > best_sum))
        best = &path, best_sum = sum;
    }
    return *best;
  }
};

}  // namespace

TunedAssignment solve(const PipelineGraph& graph, const FunctionRepository& repo,
                      const Platform& platform, const SolveOptions& options) {
  TunedAssignment a;
  a.hash = graph_hash(graph);
  a.pipes.resize(graph.pipes.size());
  a.fifo_slots.assign(graph.edges.size(), 0);

  auto report_validation = validate_graph(graph, repo);
  if (!report_validation.ok()) {
    a.status = "InvalidGraph";
    for (const auto& e : report_validation.errors)
      a.violations.push_back(e.code + ": " + e.detail);
    return a;
  }
  const auto& paths = report_validation.paths;

  // Device pipes are solver inputs: their reservations are fixed per device.
  std::vector<int> task_pipes;
  for (size_t i = 0; i < graph.pipes.size(); ++i) {
    const auto& pipe = graph.pipes[i];
    if (pipe.kind == PipeKind::Device) {
      const auto& dev = platform.devices[pipe.device_index];
      a.pipes[i] = {dev.effective_budget(platform.devices),
                    dev.effective_period(platform.devices), 1};
    } else {
      task_pipes.push_back(static_cast<int>(i));
    }
  }

  auto wcet_of = [&](int pipe) { return repo.find(graph.pipes[pipe].function)->wcet_us; };

  std::set<std::string> pinned_ids;
  for (const auto& [id, pa] : options.pinned) {
    int idx = graph.find_pipe(id);
    if (idx >= 0 && graph.pipes[idx].kind == PipeKind::Task) {
      a.pipes[idx] = pa;
      if (pa.batch < 1) a.pipes[idx].batch = 1;
      pinned_ids.insert(id);
    }
  }
  std::vector<int> tunable;
  for (int t : task_pipes)
    if (!pinned_ids.count(graph.pipes[t].id)) tunable.push_back(t);

  Tuner tuner{graph, repo, platform, options, paths, a};
  const QosSpec& qos = graph.qos;

  // (1) Rate-matched initialization. The common period honours both the delay
  // budget split over the longest path and, in Fifo mode, the throughput
  // requirement (T <= 1e6/e2e_tput keeps m/T adequate at m=1).
  if (!tunable.empty()) {
    Micros init_period = options.default_period_us;
    if (!qos.best_effort) {
      int n_tasks = 0;
      for (int p : tuner.longest_path())
        if (graph.pipes[p].kind == PipeKind::Task) ++n_tasks;
      if (n_tasks > 0) init_period = qos.e2e_delay_us / n_tasks;
      if (graph.mode == CommMode::Fifo && qos.e2e_tput_per_s > 0) {
        Micros tput_cap = static_cast<Micros>(1e6 / qos.e2e_tput_per_s);
        init_period = std::min(init_period, tput_cap);
      }
    }
    for (int t : tunable)
      a.pipes[t] = {wcet_of(t), std::max(init_period, wcet_of(t) + 1), 1};
  }

  // (2) Extend periods geometrically until every PCPU passes its test.
  int scalings = 0;
  while (!tuner.schedulable()) {
    if (++scalings > options.max_scalings) {
      a.status = "NonConvergent";
      a.violations.push_back("schedulability: period scaling hit iteration cap");
      return a;
    }
    if (tunable.empty()) break;  // nothing to extend; conditions will flag it
    for (int t : tunable) {
      double scaled = static_cast<double>(a.pipes[t].period_us) * options.alpha;
      a.pipes[t].period_us = static_cast<Micros>(std::ceil(scaled));
    }
  }

  if (!qos.best_effort && !tunable.empty()) {
    std::set<int> tunable_set(tunable.begin(), tunable.end());
    if (graph.mode == CommMode::Fifo) {
      // (3) Forward latency reduction: halve producer periods, doubling the
      // consumer budget (and batch) so it can drain the faster inflow.
      auto order = topo_order(graph);
      std::vector<int> rank(graph.pipes.size());
      for (size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
      std::vector<size_t> edge_order(graph.edges.size());
      for (size_t e = 0; e < edge_order.size(); ++e) edge_order[e] = e;
      std::sort(edge_order.begin(), edge_order.end(), [&](size_t x, size_t y) {
        const auto& ex = graph.edges[x];
        const auto& ey = graph.edges[y];
        if (rank[ex.producer] != rank[ey.producer])
          return rank[ex.producer] < rank[ey.producer];
        return rank[ex.consumer] < rank[ey.consumer];
      });

      for (size_t ei : edge_order) {
        if (tuner.worst_path_delay() <= qos.e2e_delay_us) break;
        const auto& edge = graph.edges[ei];
        int p = edge.producer, c = edge.consumer;
        if (!tunable_set.count(p)) continue;
        for (int step = 0; step < options.max_halvings_per_edge; ++step) {
          if (tuner.worst_path_delay() <= qos.e2e_delay_us) break;
          PipeAssignment saved_p = a.pipes[p], saved_c = a.pipes[c];
          Micros half = a.pipes[p].period_us / 2;
          if (half <= a.pipes[p].budget_us) break;
          a.pipes[p].period_us = half;
          if (tunable_set.count(c)) {
            Micros doubled = a.pipes[c].budget_us * 2;
            if (doubled < a.pipes[c].period_us) {
              a.pipes[c].budget_us = doubled;
              a.pipes[c].batch *= 2;
            }
          }
          if (!tuner.schedulable()) {
            a.pipes[p] = saved_p;
            a.pipes[c] = saved_c;
            break;
          }
        }
      }

      // (4) Shrink batched consumers: halve C and T together while one
      // message still fits in the budget.
      if (tuner.worst_path_delay() > qos.e2e_delay_us) {
        for (int t : order) {
          if (!tunable_set.count(t)) continue;
          while (a.pipes[t].batch > 1 &&
                 tuner.worst_path_delay() > qos.e2e_delay_us) {
            PipeAssignment saved = a.pipes[t];
            a.pipes[t].batch /= 2;
            a.pipes[t].budget_us = a.pipes[t].batch * wcet_of(t);
            a.pipes[t].period_us /= 2;
            if (a.pipes[t].budget_us >= a.pipes[t].period_us ||
                a.pipes[t].budget_us < wcet_of(t) || !tuner.schedulable()) {
              a.pipes[t] = saved;
              break;
            }
          }
        }
      }
    } else {
      // Async latency reduction: four-slot stages forward one message per
      // period, so batching is unavailable; halve every task period together
      // to keep inter-stage ratios (and hence the loss bound) unchanged.
      for (int step = 0; step < options.max_halvings_per_edge; ++step) {
        if (tuner.worst_path_delay() <= qos.e2e_delay_us) break;
        std::vector<PipeAssignment> saved = a.pipes;
        bool any = false;
        for (int t : tunable) {
          Micros half = a.pipes[t].period_us / 2;
          if (half > a.pipes[t].budget_us) {
            a.pipes[t].period_us = half;
            any = true;
          }
        }
        if (!any || !tuner.schedulable()) {
          a.pipes = saved;
          break;
        }
      }
    }
  }

  // (5) FIFO buffer capacities from the sizing formula.
  if (graph.mode == CommMode::Fifo) {
    for (size_t e = 0; e < graph.edges.size(); ++e)
      a.fifo_slots[e] = size_fifo_buffer(a.pipes[graph.edges[e].producer].batch,
                                         a.pipes[graph.edges[e].producer].period_us,
                                         a.pipes[graph.edges[e].consumer].period_us);
  }

  // (6) Verify every condition through the standalone checker.
  auto report = check_conditions(graph, paths, a, platform, options.scheduler);
  a.violations = report.violations;
  a.path_delay_us = report.path_delay_us;
  a.min_tput_per_s = report.min_tput_per_s;
  a.max_loss = report.max_loss;
  a.feasible = report.ok();
  return a;
}

}  // namespace rtpipe
