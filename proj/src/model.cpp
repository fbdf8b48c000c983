#include "model.hpp"

#include <algorithm>
#include <sstream>

namespace rtpipe {

const char* to_string(BufferKind k) {
  return k == BufferKind::FourSlot ? "fourslot" : "fifo";
}
const char* to_string(CommMode m) { return m == CommMode::Async ? "async" : "fifo"; }
const char* to_string(EndpointRole r) {
  switch (r) {
    case EndpointRole::SourceReader: return "source_reader";
    case EndpointRole::SinkWriter: return "sink_writer";
    default: return "interior";
  }
}
const char* to_string(Scheduler s) { return s == Scheduler::Rms ? "rms" : "edf"; }

std::optional<std::string> FunctionRepository::register_function(FunctionProfile profile) {
  if (profile.name.empty()) return "function name must be non-empty";
  if (profile.wcet_us <= 0) return "wcet_per_message must be positive";
  if (profile.max_inputs < 1 || profile.max_outputs < 1)
    return "arity limits must be at least 1";
  if (profile.input_buffering.empty() || profile.output_buffering.empty())
    return "buffering capability sets must be non-empty";
  if (find(profile.name)) return "DuplicateName: " + profile.name;
  profiles_.push_back(std::move(profile));
  return std::nullopt;
}

const FunctionProfile* FunctionRepository::find(std::string_view name) const {
  for (const auto& p : profiles_)
    if (p.name == name) return &p;
  return nullptr;
}

Micros DeviceThread::effective_period(const std::vector<DeviceThread>& table) const {
  if (!is_io) return period_us;
  for (const auto& d : table)
    if (d.name == serves) return d.period_us;
  return period_us;  // standalone io thread: period declared directly
}

Micros DeviceThread::effective_budget(const std::vector<DeviceThread>& table) const {
  if (!is_io) return budget_us;
  return static_cast<Micros>(u_io * static_cast<double>(effective_period(table)));
}

int PipelineGraph::find_pipe(std::string_view id) const {
  for (size_t i = 0; i < pipes.size(); ++i)
    if (pipes[i].id == id) return static_cast<int>(i);
  return -1;
}

std::vector<std::vector<int>> PipelineGraph::successors() const {
  std::vector<std::vector<int>> succ(pipes.size());
  for (const auto& e : edges) succ[e.producer].push_back(e.consumer);
  for (auto& s : succ)
    std::sort(s.begin(), s.end(),
              [this](int a, int b) { return pipes[a].id < pipes[b].id; });
  return succ;
}

std::vector<std::vector<int>> PipelineGraph::predecessors() const {
  std::vector<std::vector<int>> pred(pipes.size());
  for (const auto& e : edges) pred[e.consumer].push_back(e.producer);
  for (auto& p : pred)
    std::sort(p.begin(), p.end(),
              [this](int a, int b) { return pipes[a].id < pipes[b].id; });
  return pred;
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  for (const auto& e : errors) os << e.code << ": " << e.detail << "\n";
  return os.str();
}

namespace {

// Enumerate all source->sink paths by DFS with id-sorted adjacency, so the
// ordering is a pure function of the graph.
void enumerate_paths(const PipelineGraph& g,
                     const std::vector<std::vector<int>>& succ, int node,
                     std::vector<int>& stack, std::vector<std::vector<int>>& out) {
  stack.push_back(node);
  if (succ[node].empty()) {
    out.push_back(stack);
  } else {
    for (int next : succ[node]) enumerate_paths(g, succ, next, stack, out);
  }
  stack.pop_back();
}

bool find_cycle(const PipelineGraph& g, const std::vector<std::vector<int>>& succ,
                std::vector<int>& cycle_out) {
  enum { White, Grey, Black };
  std::vector<int> color(g.pipes.size(), White);
  std::vector<int> stack;
  // Iterative DFS with an explicit path stack so the cycle can be reported.
  struct Frame { int node; size_t next; };
  for (size_t root = 0; root < g.pipes.size(); ++root) {
    if (color[root] != White) continue;
    std::vector<Frame> frames{{static_cast<int>(root), 0}};
    color[root] = Grey;
    stack.push_back(static_cast<int>(root));
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < succ[f.node].size()) {
        int next = succ[f.node][f.next++];
        if (color[next] == Grey) {
          auto it = std::find(stack.begin(), stack.end(), next);
          cycle_out.assign(it, stack.end());
          return true;
        }
        if (color[next] == White) {
          color[next] = Grey;
          stack.push_back(next);
          frames.push_back({next, 0});
        }
      } else {
        color[f.node] = Black;
        stack.pop_back();
        frames.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

ValidationReport validate_graph(const PipelineGraph& graph,
                                const FunctionRepository& repo) {
  ValidationReport report;
  auto err = [&report](std::string code, std::string detail) {
    report.errors.push_back({std::move(code), std::move(detail)});
  };

  for (const auto& e : graph.edges) {
    if (e.producer < 0 || e.producer >= static_cast<int>(graph.pipes.size()) ||
        e.consumer < 0 || e.consumer >= static_cast<int>(graph.pipes.size())) {
      err("DanglingEdge", "edge references a pipe outside the graph");
      return report;
    }
  }

  auto succ = graph.successors();
  auto pred = graph.predecessors();

  // Edge buffering must agree with the declared mode and with the function
  // capabilities on both sides.
  for (const auto& e : graph.edges) {
    const auto& prod = graph.pipes[e.producer];
    const auto& cons = graph.pipes[e.consumer];
    BufferKind expected =
        graph.mode == CommMode::Fifo ? BufferKind::Fifo : BufferKind::FourSlot;
    if (e.buffer != expected)
      err("BufferingMismatch", prod.id + "->" + cons.id + " uses " +
                                   to_string(e.buffer) + " in " +
                                   to_string(graph.mode) + " mode");
    if (prod.kind == PipeKind::Task) {
      const auto* f = repo.find(prod.function);
      if (!f) {
        err("UnknownFunction", prod.function);
      } else if (!f->output_buffering.allows(e.buffer)) {
        err("BufferingMismatch",
            prod.id + " output does not allow " + to_string(e.buffer));
      }
    }
    if (cons.kind == PipeKind::Task) {
      const auto* f = repo.find(cons.function);
      if (!f) {
        err("UnknownFunction", cons.function);
      } else if (!f->input_buffering.allows(e.buffer)) {
        err("BufferingMismatch",
            cons.id + " input does not allow " + to_string(e.buffer));
      }
    }
    if (!prod.output.connectable)
      err("EndpointNotConnectable", prod.id + " output endpoint");
    if (!cons.input.connectable)
      err("EndpointNotConnectable", cons.id + " input endpoint");
  }

  // Arity and role checks for task pipes.
  for (size_t i = 0; i < graph.pipes.size(); ++i) {
    const auto& pipe = graph.pipes[i];
    if (pipe.kind != PipeKind::Task) continue;
    const auto* f = repo.find(pipe.function);
    if (!f) {
      err("UnknownFunction", pipe.function);
      continue;
    }
    if (static_cast<int>(pred[i].size()) > f->max_inputs)
      err("ArityExceeded", pipe.id + " fan-in " + std::to_string(pred[i].size()) +
                               " exceeds I=" + std::to_string(f->max_inputs));
    if (static_cast<int>(succ[i].size()) > f->max_outputs)
      err("ArityExceeded", pipe.id + " fan-out " + std::to_string(succ[i].size()) +
                               " exceeds O=" + std::to_string(f->max_outputs));

    auto all_tasks = [&graph](const std::vector<int>& v) {
      return std::all_of(v.begin(), v.end(), [&graph](int n) {
        return graph.pipes[n].kind == PipeKind::Task;
      });
    };
    auto all_devices = [&graph](const std::vector<int>& v) {
      return std::all_of(v.begin(), v.end(), [&graph](int n) {
        return graph.pipes[n].kind == PipeKind::Device;
      });
    };
    switch (f->role) {
      case EndpointRole::SourceReader:
        if (!all_devices(pred[i]))
          err("RoleMismatch", pipe.id + " is a source-reader but has a task predecessor");
        break;
      case EndpointRole::SinkWriter:
        if (!all_devices(succ[i]))
          err("RoleMismatch", pipe.id + " is a sink-writer but has a task successor");
        break;
      case EndpointRole::Interior:
        if (pred[i].empty() || succ[i].empty())
          err("RoleMismatch", pipe.id + " is interior but sits at a pipeline boundary");
        else if (!all_tasks(pred[i]) || !all_tasks(succ[i]))
          err("RoleMismatch", pipe.id + " is interior but connects to a device");
        break;
    }
  }

  std::vector<int> cycle;
  if (find_cycle(graph, succ, cycle)) {
    std::string names;
    for (int n : cycle) {
      if (!names.empty()) names += ",";
      names += graph.pipes[n].id;
    }
    err("CycleDetected", names);
    return report;  // path enumeration needs a DAG
  }

  std::vector<int> sources;
  for (size_t i = 0; i < graph.pipes.size(); ++i)
    if (pred[i].empty()) sources.push_back(static_cast<int>(i));
  std::sort(sources.begin(), sources.end(),
            [&graph](int a, int b) { return graph.pipes[a].id < graph.pipes[b].id; });
  std::vector<int> stack;
  for (int s : sources) enumerate_paths(graph, succ, s, stack, report.paths);

  // Device pipes may only form the prefix/suffix of a path.
  for (const auto& path : report.paths) {
    bool seen_task = false, closed = false;
    for (int n : path) {
      bool is_task = graph.pipes[n].kind == PipeKind::Task;
      if (is_task) {
        if (closed) {
          err("RoleMismatch",
              graph.pipes[n].id + " follows a device pipe interior to a path");
          break;
        }
        seen_task = true;
      } else if (seen_task) {
        closed = true;
      }
    }
  }

  if (!report.errors.empty()) {
    report.paths.clear();
    return report;
  }

  for (size_t i = 0; i < report.paths.size(); ++i) {
    if (report.longest_path < 0 ||
        report.paths[i].size() > report.paths[report.longest_path].size())
      report.longest_path = static_cast<int>(i);
  }
  return report;
}

std::uint64_t graph_hash(const PipelineGraph& graph) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  mix(to_string(graph.mode));
  mix(graph.qos.best_effort ? "be" : "qos");
  mix(std::to_string(graph.qos.e2e_delay_us));
  mix(std::to_string(static_cast<std::int64_t>(graph.qos.e2e_tput_per_s * 1e6)));
  mix(std::to_string(static_cast<std::int64_t>(graph.qos.loss_rate * 1e9)));
  for (const auto& p : graph.pipes) {
    mix(p.id);
    mix(p.kind == PipeKind::Task ? "t" : "d");
    mix(p.function);
    mix(std::to_string(p.sandbox));
    mix(std::to_string(p.pcpu));
  }
  for (const auto& e : graph.edges) {
    mix(graph.pipes[e.producer].id);
    mix(graph.pipes[e.consumer].id);
    mix(to_string(e.buffer));
  }
  return h;
}

}  // namespace rtpipe
