#include "regenalloc/flowgraph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "regenalloc/rng.hpp"

namespace regenalloc {
namespace {

/// Dinic's algorithm on integer capacities.
class IntNetwork {
 public:
  explicit IntNetwork(int n) : adj_(static_cast<std::size_t>(n)) {}

  int add_edge(int from, int to, std::int64_t cap) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, cap});
    arcs_.push_back({from, 0});
    adj_[static_cast<std::size_t>(from)].push_back(id);
    adj_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  int add_vertex() {
    adj_.emplace_back();
    return static_cast<int>(adj_.size()) - 1;
  }

  std::int64_t flow_on(int arc) const { return arcs_[static_cast<std::size_t>(arc ^ 1)].residual; }

  std::int64_t run(int s, int t) {
    std::int64_t total = 0;
    while (levels(s, t)) {
      next_.assign(adj_.size(), 0);
      while (std::int64_t pushed = augment(s, t, std::numeric_limits<std::int64_t>::max())) total += pushed;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    std::int64_t residual;
  };

  bool levels(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : adj_[static_cast<std::size_t>(v)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(id)];
        if (a.residual > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
          level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(v)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  std::int64_t augment(int v, int t, std::int64_t limit) {
    if (v == t) return limit;
    auto& edges = adj_[static_cast<std::size_t>(v)];
    for (auto& i = next_[static_cast<std::size_t>(v)]; i < edges.size(); ++i) {
      int id = edges[i];
      Arc& a = arcs_[static_cast<std::size_t>(id)];
      if (a.residual <= 0 || level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(v)] + 1) {
        continue;
      }
      if (std::int64_t got = augment(a.to, t, std::min(limit, a.residual))) {
        a.residual -= got;
        arcs_[static_cast<std::size_t>(id ^ 1)].residual += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

/// Integer image of a FlowGraph: capacities times a common denominator,
/// unbounded edges replaced by (sum of finite scaled capacities) + 1.
struct ScaledNetwork {
  IntNetwork net;
  std::vector<int> arc_of_edge;
  std::int64_t scale = 1;
  std::int64_t sentinel = 1;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw RatioOverflow("max_flow: capacity sum overflow");
  return out;
}

ScaledNetwork scale_network(const FlowGraph& g) {
  std::int64_t scale = 1;
  for (const auto& e : g.edges()) {
    if (e.capacity) scale = lcm_checked(scale, e.capacity->den());
  }
  std::int64_t sum = 0;
  for (const auto& e : g.edges()) {
    if (e.capacity) sum = checked_add(sum, (*e.capacity * scale).num());
  }
  ScaledNetwork out{IntNetwork(static_cast<int>(g.vertices().size())), {}, scale, checked_add(sum, 1)};
  out.arc_of_edge.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    std::int64_t cap = e.capacity ? (*e.capacity * scale).num() : out.sentinel;
    out.arc_of_edge.push_back(out.net.add_edge(e.tail, e.head, cap));
  }
  return out;
}

void check_collector_nodes(const FlowGraph& g, const std::vector<int>& nodes) {
  const auto& p = g.params();
  std::set<int> distinct(nodes.begin(), nodes.end());
  if (static_cast<int>(nodes.size()) != p.k || static_cast<int>(distinct.size()) != p.k) {
    throw std::invalid_argument("collector needs exactly k=" + std::to_string(p.k) + " distinct nodes");
  }
  for (int node : nodes) {
    if (node < 1 || node > p.n()) throw std::invalid_argument("collector node " + std::to_string(node) + " out of range");
  }
}

bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
  if (i < 0) return false;
  ++comb[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// FlowGraph

int FlowGraph::add_vertex(Vertex v) {
  vertices_.push_back(v);
  return static_cast<int>(vertices_.size()) - 1;
}

void FlowGraph::check_node(int node, const char* what) const {
  if (node < 1 || node > params_.n()) {
    throw RepairError(std::string(what) + " " + std::to_string(node) + " out of range 1.." +
                      std::to_string(params_.n()));
  }
}

int FlowGraph::latest_out(int node) const {
  check_node(node, "node");
  return latest_out_[static_cast<std::size_t>(node)];
}

int FlowGraph::latest_stage(int node) const { return vertices_[static_cast<std::size_t>(latest_out(node))].stage; }

int FlowGraph::collector_vertex(int dc_id) const {
  if (dc_id < 0 || dc_id >= static_cast<int>(collectors_.size())) {
    throw std::out_of_range("unknown collector " + std::to_string(dc_id));
  }
  return collectors_[static_cast<std::size_t>(dc_id)];
}

FlowGraph build_initial(const SystemParams& params, const Allocation& alloc) {
  FlowGraph g;
  g.params_ = params;
  g.alloc_ = alloc;
  g.add_vertex({VertexKind::Source, 0, -1});
  g.latest_out_.assign(static_cast<std::size_t>(params.n() + 1), -1);
  for (int node = 1; node <= params.n(); ++node) {
    int in = g.add_vertex({VertexKind::In, node, 0});
    int out = g.add_vertex({VertexKind::Out, node, 0});
    g.add_edge(g.source(), in, kUnbounded);
    g.add_edge(in, out, alloc.alpha_for(params.type_of(node)));
    g.latest_out_[static_cast<std::size_t>(node)] = out;
  }
  return g;
}

FlowGraph apply_repair(const FlowGraph& graph, const RepairEvent& event) {
  const auto& p = graph.params();
  graph.check_node(event.failed_node, "failed node");
  if (static_cast<int>(event.helpers.size()) != p.d) {
    throw RepairError("repair of node " + std::to_string(event.failed_node) + " needs d=" + std::to_string(p.d) +
                      " helpers, got " + std::to_string(event.helpers.size()));
  }
  std::set<int> seen;
  for (int h : event.helpers) {
    graph.check_node(h, "helper");
    if (h == event.failed_node) {
      throw RepairError("node " + std::to_string(h) + " cannot help its own repair");
    }
    if (!seen.insert(h).second) throw RepairError("duplicate helper " + std::to_string(h));
  }

  FlowGraph g = graph;
  const int stage = ++g.stage_;
  int in = g.add_vertex({VertexKind::In, event.failed_node, stage});
  int out = g.add_vertex({VertexKind::Out, event.failed_node, stage});
  for (int h : event.helpers) g.add_edge(g.latest_out_[static_cast<std::size_t>(h)], in, p.beta);
  g.add_edge(in, out, g.alloc_.alpha_for(p.type_of(event.failed_node)));
  g.latest_out_[static_cast<std::size_t>(event.failed_node)] = out;
  return g;
}

std::pair<FlowGraph, int> attach_dc(const FlowGraph& graph, const std::vector<int>& nodes) {
  check_collector_nodes(graph, nodes);
  FlowGraph g = graph;
  const int dc_id = static_cast<int>(g.collectors_.size());
  int dc = g.add_vertex({VertexKind::Collector, dc_id, g.stage_});
  for (int node : nodes) g.add_edge(g.latest_out_[static_cast<std::size_t>(node)], dc, kUnbounded);
  g.collectors_.push_back(dc);
  return {std::move(g), dc_id};
}

FlowSolution max_flow_between(const FlowGraph& graph, int source, int sink) {
  ScaledNetwork sn = scale_network(graph);
  std::int64_t value = sn.net.run(source, sink);
  FlowSolution out{Ratio(value, sn.scale), {}};
  out.edge_flow.reserve(graph.edges().size());
  for (int arc : sn.arc_of_edge) out.edge_flow.emplace_back(sn.net.flow_on(arc), sn.scale);
  return out;
}

Ratio max_flow(const FlowGraph& graph, int dc_id) {
  return max_flow_between(graph, graph.source(), graph.collector_vertex(dc_id)).value;
}

Ratio collector_flow(const FlowGraph& graph, const std::vector<int>& nodes) {
  check_collector_nodes(graph, nodes);
  ScaledNetwork sn = scale_network(graph);
  int dc = sn.net.add_vertex();
  for (int node : nodes) sn.net.add_edge(graph.latest_out(node), dc, sn.sentinel);
  return Ratio(sn.net.run(graph.source(), dc), sn.scale);
}

// ---------------------------------------------------------------------------
// Scenarios

std::vector<RepairEvent> Scenario::repairs() const {
  std::vector<RepairEvent> out;
  for (const auto& s : steps) {
    if (auto* r = std::get_if<RepairEvent>(&s)) out.push_back(*r);
  }
  return out;
}

std::vector<DcQuery> Scenario::queries() const {
  std::vector<DcQuery> out;
  for (const auto& s : steps) {
    if (auto* q = std::get_if<DcQuery>(&s)) out.push_back(*q);
  }
  return out;
}

ScenarioError::ScenarioError(int line, const std::string& what)
    : std::runtime_error("scenario line " + std::to_string(line) + ": " + what), line_(line) {}

Scenario parse_scenario(std::istream& in, const SystemParams* params) {
  Scenario scenario;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::string keyword;
    if (!(tokens >> keyword)) continue;

    std::vector<int> ids;
    std::string tok;
    while (tokens >> tok) {
      try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        ids.push_back(v);
      } catch (const std::exception&) {
        throw ScenarioError(line_no, "not a node id: '" + tok + "'");
      }
    }
    if (params) {
      for (int id : ids) {
        if (id < 1 || id > params->n()) {
          throw ScenarioError(line_no, "node " + std::to_string(id) + " out of range 1.." + std::to_string(params->n()));
        }
      }
    }

    if (keyword == "repair") {
      if (ids.empty()) throw ScenarioError(line_no, "repair needs a node id");
      RepairEvent ev{ids.front(), std::vector<int>(ids.begin() + 1, ids.end())};
      if (params && static_cast<int>(ev.helpers.size()) != params->d) {
        throw ScenarioError(line_no, "repair needs d=" + std::to_string(params->d) + " helpers, got " +
                                         std::to_string(ev.helpers.size()));
      }
      scenario.steps.emplace_back(std::move(ev));
    } else if (keyword == "dc") {
      if (ids.empty()) throw ScenarioError(line_no, "dc needs node ids");
      if (params && static_cast<int>(ids.size()) != params->k) {
        throw ScenarioError(line_no,
                            "dc needs k=" + std::to_string(params->k) + " nodes, got " + std::to_string(ids.size()));
      }
      scenario.steps.emplace_back(DcQuery{std::move(ids)});
    } else {
      throw ScenarioError(line_no, "unknown directive '" + keyword + "'");
    }
  }
  return scenario;
}

std::string format_scenario(const Scenario& scenario) {
  std::ostringstream os;
  for (const auto& step : scenario.steps) {
    if (auto* r = std::get_if<RepairEvent>(&step)) {
      os << "repair " << r->failed_node;
      for (int h : r->helpers) os << ' ' << h;
    } else {
      os << "dc";
      for (int node : std::get<DcQuery>(step).nodes) os << ' ' << node;
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Verification

std::vector<std::vector<int>> all_collectors(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 1 || k > n) return out;
  std::vector<int> comb(static_cast<std::size_t>(k));
  std::iota(comb.begin(), comb.end(), 1);
  do {
    out.push_back(comb);
  } while (next_combination(comb, n));
  return out;
}

namespace {

void observe(VerificationReport& report, const FlowGraph& g, const std::vector<int>& nodes) {
  Ratio flow = collector_flow(g, nodes);
  if (report.collectors_checked == 0 || flow < report.min_flow) {
    report.min_flow = flow;
    report.worst_dc = nodes;
    report.worst_stage = g.current_stage();
  }
  ++report.collectors_checked;
}

void observe_policy(VerificationReport& report, const FlowGraph& g, const DcPolicy& policy,
                    const std::vector<std::vector<int>>& exhaustive, SplitMix64& rng) {
  if (std::holds_alternative<ExhaustiveDcs>(policy)) {
    for (const auto& nodes : exhaustive) observe(report, g, nodes);
    return;
  }
  const auto& sampled = std::get<SampledDcs>(policy);
  std::vector<int> pool(static_cast<std::size_t>(g.params().n()));
  std::iota(pool.begin(), pool.end(), 1);
  for (int i = 0; i < sampled.count; ++i) {
    auto nodes = rng.sample(pool, static_cast<std::size_t>(g.params().k));
    std::sort(nodes.begin(), nodes.end());
    observe(report, g, nodes);
  }
}

void finish(VerificationReport& report, const SystemParams& p) {
  report.passed = report.collectors_checked > 0 && report.min_flow >= p.file_size;
}

std::uint64_t policy_seed(const DcPolicy& policy) {
  if (auto* s = std::get_if<SampledDcs>(&policy)) return s->seed;
  return 0;
}

}  // namespace

VerificationReport verify_allocation(const SystemParams& params, const Allocation& alloc,
                                     const std::vector<RepairEvent>& history, const DcPolicy& policy) {
  const auto exhaustive = std::holds_alternative<ExhaustiveDcs>(policy) ? all_collectors(params.n(), params.k)
                                                                         : std::vector<std::vector<int>>{};
  SplitMix64 rng(policy_seed(policy));
  VerificationReport report;
  FlowGraph g = build_initial(params, alloc);
  observe_policy(report, g, policy, exhaustive, rng);
  for (const auto& ev : history) {
    g = apply_repair(g, ev);
    observe_policy(report, g, policy, exhaustive, rng);
  }
  finish(report, params);
  return report;
}

VerificationReport verify_scenario(const SystemParams& params, const Allocation& alloc, const Scenario& scenario,
                                   const DcPolicy& fallback) {
  if (scenario.queries().empty()) return verify_allocation(params, alloc, scenario.repairs(), fallback);
  VerificationReport report;
  FlowGraph g = build_initial(params, alloc);
  for (const auto& step : scenario.steps) {
    if (auto* r = std::get_if<RepairEvent>(&step)) {
      g = apply_repair(g, *r);
    } else {
      observe(report, g, std::get<DcQuery>(step).nodes);
    }
  }
  finish(report, params);
  return report;
}

std::vector<RepairEvent> random_history(const SystemParams& params, int repairs, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<RepairEvent> history;
  const int n = params.n();
  for (int step = 0; step < repairs; ++step) {
    int failed = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    std::vector<int> others;
    for (int node = 1; node <= n; ++node) {
      if (node != failed) others.push_back(node);
    }
    auto helpers = rng.sample(std::move(others), static_cast<std::size_t>(params.d));
    std::sort(helpers.begin(), helpers.end());
    history.push_back({failed, std::move(helpers)});
  }
  return history;
}

Scenario adversarial_scenario(const SystemParams& params, const AlphaVector& vec) {
  if (!is_admissible(vec, params)) throw std::invalid_argument("adversarial_scenario: vector not admissible");
  const int n = params.n();
  if (n < params.d + 1) throw std::invalid_argument("adversarial_scenario: needs n >= d + 1");

  // Assign distinct nodes of the requested types, lowest ids first.
  std::vector<int> victims;
  std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
  for (NodeType t : vec) {
    int pick = 0;
    for (int node = 1; node <= n && !pick; ++node) {
      if (!used[static_cast<std::size_t>(node)] && params.type_of(node) == t) pick = node;
    }
    used[static_cast<std::size_t>(pick)] = true;
    victims.push_back(pick);
  }

  Scenario scenario;
  for (std::size_t i = 0; i < victims.size(); ++i) {
    RepairEvent ev{victims[i], {}};
    ev.helpers.assign(victims.begin(), victims.begin() + static_cast<std::ptrdiff_t>(i));
    const std::size_t outside = static_cast<std::size_t>(params.d) - i;
    // Untouched nodes first, then old incarnations of later victims.
    for (int node = 1; node <= n && ev.helpers.size() < i + outside; ++node) {
      if (!used[static_cast<std::size_t>(node)]) ev.helpers.push_back(node);
    }
    for (std::size_t j = i + 1; j < victims.size() && ev.helpers.size() < i + outside; ++j) {
      ev.helpers.push_back(victims[j]);
    }
    scenario.steps.emplace_back(std::move(ev));
  }
  scenario.steps.emplace_back(DcQuery{victims});
  return scenario;
}

}  // namespace regenalloc
