#ifndef RTPIPE_MODEL_HPP
#define RTPIPE_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rtpipe {

// All times are integer microseconds.
using Micros = std::int64_t;

enum class BufferKind { FourSlot, Fifo };
enum class PipeKind { Task, Device };
enum class CommMode { Async, Fifo };
enum class EndpointRole { SourceReader, SinkWriter, Interior };
enum class Scheduler { Rms, Edf };

const char* to_string(BufferKind k);
const char* to_string(CommMode m);
const char* to_string(EndpointRole r);
const char* to_string(Scheduler s);

// hostID is fixed to the local host; the triple below is the key.
struct EndpointId {
  int sandbox = 0;       // scheduling-domain index
  int address_space = 0;
  int endpoint = 0;
  bool connectable = true;
  friend bool operator==(const EndpointId&, const EndpointId&) = default;
};

struct BufferingSet {
  bool four_slot = false;
  bool fifo = false;
  bool allows(BufferKind k) const {
    return k == BufferKind::FourSlot ? four_slot : fifo;
  }
  bool empty() const { return !four_slot && !fifo; }
};

inline constexpr BufferingSet kBothBufferings{true, true};

// A registered callback: pre-profiled worst-case cost per message plus the
// endpoint capabilities it declares.
struct FunctionProfile {
  std::string name;
  Micros wcet_us = 0;  // read + process + emit one message
  int max_inputs = 1;
  int max_outputs = 1;
  BufferingSet input_buffering = kBothBufferings;
  BufferingSet output_buffering = kBothBufferings;
  EndpointRole role = EndpointRole::Interior;
};

class FunctionRepository {
 public:
  // Empty result means registered; otherwise the rejection reason.
  std::optional<std::string> register_function(FunctionProfile profile);
  const FunctionProfile* find(std::string_view name) const;
  const std::vector<FunctionProfile>& all() const { return profiles_; }

 private:
  std::vector<FunctionProfile> profiles_;  // insertion order kept for determinism
};

// One schedulable device entity. Several graph nodes (e.g. the input and
// output closure of a round-trip path) may share one entity; utilization is
// charged once per entity.
struct DeviceThread {
  std::string name;
  bool is_io = false;    // io: dynamic budget u_io * period of `serves`
  double u_io = 0.0;
  std::string serves;    // io only: main device thread whose period it inherits
  Micros budget_us = 0;  // main only
  Micros period_us = 0;  // main only
  Micros wcet_us = 0;    // per-message bottom-half / scatter-gather cost
  int pcpu = 0;
  int sandbox = 0;

  // Effective reservation used for analysis and simulation.
  Micros effective_period(const std::vector<DeviceThread>& table) const;
  Micros effective_budget(const std::vector<DeviceThread>& table) const;
};

struct TunedPipe {
  std::string id;  // unique within the graph
  PipeKind kind = PipeKind::Task;
  std::string function;  // task: repository name; device: DeviceThread name
  EndpointId input;
  EndpointId output;
  int sandbox = 0;
  int pcpu = 0;
  int device_index = -1;  // device pipes: index into the platform device table
};

struct Edge {
  int producer = -1;  // pipe indices
  int consumer = -1;
  BufferKind buffer = BufferKind::FourSlot;
};

struct QosSpec {
  bool best_effort = true;
  Micros e2e_delay_us = 0;
  double e2e_tput_per_s = 0.0;  // Fifo mode
  double loss_rate = 0.0;       // Async mode
};

struct PipelineGraph {
  CommMode mode = CommMode::Async;
  QosSpec qos;
  std::vector<TunedPipe> pipes;
  std::vector<Edge> edges;

  int find_pipe(std::string_view id) const;
  std::vector<std::vector<int>> successors() const;
  std::vector<std::vector<int>> predecessors() const;
};

struct ValidationIssue {
  std::string code;  // BufferingMismatch, ArityExceeded, RoleMismatch, ...
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<std::vector<int>> paths;  // source->sink, lexicographic by id
  int longest_path = -1;                // index into paths
  bool ok() const { return errors.empty(); }
  std::string describe() const;
};

// Structural validation: buffering capabilities, arity limits, role/position
// agreement, acyclicity. On success the report carries the enumerated
// source->sink paths.
ValidationReport validate_graph(const PipelineGraph& graph,
                                const FunctionRepository& repo);

// FNV-1a over a canonical rendering of the graph; used to tie assignment
// files to the scenario they were solved for.
std::uint64_t graph_hash(const PipelineGraph& graph);

}  // namespace rtpipe

#endif
