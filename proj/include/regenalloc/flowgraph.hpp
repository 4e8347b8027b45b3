#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "regenalloc/constraints.hpp"
#include "regenalloc/params.hpp"

namespace regenalloc {

/// Edge capacity; std::nullopt means unbounded.
using Capacity = std::optional<Ratio>;
inline constexpr std::nullopt_t kUnbounded = std::nullopt;

enum class VertexKind { Source, In, Out, Collector };

struct Vertex {
  VertexKind kind = VertexKind::Source;
  int node = 0;   // storage node id (1-based); collector id for Collector
  int stage = -1;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  int tail = 0;
  int head = 0;
  Capacity capacity;
};

/// Node `failed_node` is replaced by a newcomer downloading beta from each helper.
struct RepairEvent {
  int failed_node = 0;
  std::vector<int> helpers;

  friend bool operator==(const RepairEvent&, const RepairEvent&) = default;
};

class RepairError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Staged information flow graph. Builder steps return new values.
class FlowGraph {
 public:
  const SystemParams& params() const noexcept { return params_; }
  const Allocation& allocation() const noexcept { return alloc_; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int source() const noexcept { return 0; }
  int current_stage() const noexcept { return stage_; }
  /// Vertex index of the newest Out vertex of `node`.
  int latest_out(int node) const;
  /// Stage at which the newest incarnation of `node` was created.
  int latest_stage(int node) const;
  /// Vertex index of a collector previously attached under `dc_id`.
  int collector_vertex(int dc_id) const;

 private:
  friend FlowGraph build_initial(const SystemParams&, const Allocation&);
  friend FlowGraph apply_repair(const FlowGraph&, const RepairEvent&);
  friend std::pair<FlowGraph, int> attach_dc(const FlowGraph&, const std::vector<int>&);

  int add_vertex(Vertex v);
  void add_edge(int tail, int head, Capacity cap) { edges_.push_back({tail, head, std::move(cap)}); }
  void check_node(int node, const char* what) const;

  SystemParams params_;
  Allocation alloc_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<int> latest_out_;  // indexed by node id; [0] unused
  std::vector<int> collectors_;  // collector vertex by dc id
  int stage_ = 0;
};

FlowGraph build_initial(const SystemParams& params, const Allocation& alloc);

/// Throws RepairError on a bad event (wrong helper count, duplicates, the
/// failed node among its own helpers, or ids out of range).
FlowGraph apply_repair(const FlowGraph& graph, const RepairEvent& event);

/// Collector with unbounded edges from the newest Out of each listed node.
/// Requires exactly k distinct valid ids.
std::pair<FlowGraph, int> attach_dc(const FlowGraph& graph, const std::vector<int>& nodes);

/// Exact max-flow from the source to collector `dc_id`.
Ratio max_flow(const FlowGraph& graph, int dc_id);

/// A maximum flow with its per-edge assignment (same order as edges()).
struct FlowSolution {
  Ratio value;
  std::vector<Ratio> edge_flow;
};
FlowSolution max_flow_between(const FlowGraph& graph, int source, int sink);

/// Max-flow to a virtual collector on `nodes`, without copying the graph.
Ratio collector_flow(const FlowGraph& graph, const std::vector<int>& nodes);

// ---------------------------------------------------------------------------
// Scenarios and verification

struct DcQuery {
  std::vector<int> nodes;
  friend bool operator==(const DcQuery&, const DcQuery&) = default;
};

using ScenarioStep = std::variant<RepairEvent, DcQuery>;

/// Line-oriented history: `repair <node> <h1> ... <hd>` and `dc <n1> ... <nk>`.
/// `#` starts a comment; blank lines are ignored.
struct Scenario {
  std::vector<ScenarioStep> steps;

  std::vector<RepairEvent> repairs() const;
  std::vector<DcQuery> queries() const;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Grammar only; arity and ranges are checked against params when given.
Scenario parse_scenario(std::istream& in, const SystemParams* params = nullptr);
std::string format_scenario(const Scenario& scenario);

struct ExhaustiveDcs {};
struct SampledDcs {
  int count = 50;
  std::uint64_t seed = 0;
};
using DcPolicy = std::variant<ExhaustiveDcs, SampledDcs>;

struct VerificationReport {
  Ratio min_flow;
  bool passed = false;
  std::vector<int> worst_dc;  // collector achieving min_flow
  int worst_stage = 0;        // stage after which it was evaluated
  std::size_t collectors_checked = 0;
};

/// Replays history and evaluates collectors after stage 0 and after every
/// repair, per policy. Passes iff every collector sees at least M.
VerificationReport verify_allocation(const SystemParams& params, const Allocation& alloc,
                                     const std::vector<RepairEvent>& history, const DcPolicy& policy);

/// Replays a scenario. Explicit `dc` lines are evaluated where they appear;
/// a scenario without any falls back to the policy after every stage.
VerificationReport verify_scenario(const SystemParams& params, const Allocation& alloc, const Scenario& scenario,
                                   const DcPolicy& fallback = ExhaustiveDcs{});

/// Uniformly random failed node and d distinct helpers per step, seeded.
std::vector<RepairEvent> random_history(const SystemParams& params, int repairs, std::uint64_t seed);

/// All k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> all_collectors(int n, int k);

/// Tightness construction for vec: nodes of the prescribed types fail in
/// order; newcomer i downloads from newcomers 1..i-1 and d-i+1 other live
/// nodes; the collector reads the k newcomers.
Scenario adversarial_scenario(const SystemParams& params, const AlphaVector& vec);

}  // namespace regenalloc
