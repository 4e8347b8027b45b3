#include "regenalloc/rlnc.hpp"

#include <algorithm>
#include <stdexcept>

namespace regenalloc {
namespace {

std::uint8_t random_symbol(const GaloisField& field, SplitMix64& rng) {
  return static_cast<std::uint8_t>(rng.below(field.size()));
}

// dst += scale * src
void axpy(const GaloisField& field, Symbols& dst, const Symbols& src, std::uint8_t scale) {
  if (scale == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = GaloisField::add(dst[i], field.mul(scale, src[i]));
}

/// Random linear combination of `inputs`; all share coefficient and payload widths.
CodedPacket combine(const GaloisField& field, const std::vector<CodedPacket>& inputs, std::size_t width,
                    std::size_t payload, SplitMix64& rng) {
  CodedPacket out{Symbols(width, 0), Symbols(payload, 0)};
  for (const auto& in : inputs) {
    std::uint8_t c = random_symbol(field, rng);
    axpy(field, out.coeffs, in.coeffs, c);
    if (payload) axpy(field, out.payload, in.payload, c);
  }
  return out;
}

const NodeState& state_of(const std::vector<NodeState>& states, int node) {
  auto it = std::find_if(states.begin(), states.end(), [&](const NodeState& s) { return s.node == node; });
  if (it == states.end()) throw std::invalid_argument("unknown node " + std::to_string(node));
  return *it;
}

std::vector<CodedPacket> gather(const std::vector<NodeState>& states, const std::vector<int>& nodes) {
  std::vector<CodedPacket> out;
  for (int node : nodes) {
    const auto& s = state_of(states, node);
    out.insert(out.end(), s.packets.begin(), s.packets.end());
  }
  return out;
}

/// Reduced row echelon form in place over the first `pivot_cols` columns.
/// Returns the pivot column of each of the leading rows.
std::vector<std::size_t> eliminate(const GaloisField& field, std::vector<Symbols>& rows, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < pivot_cols && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    std::uint8_t inv = field.inv(rows[r][col]);
    for (auto& x : rows[r]) x = field.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i][col] != 0) axpy(field, rows[i], rows[r], rows[i][col]);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

PacketCounts packetize(const SystemParams& params, const Allocation& alloc, std::int64_t cap) {
  std::int64_t scale = 1;
  for (const Ratio* v : {&params.file_size, &alloc.alpha1, &alloc.alpha2, &params.beta}) {
    scale = lcm_checked(scale, v->den());
  }
  PacketCounts out;
  out.scale = scale;
  out.file = (params.file_size * scale).num();
  out.alpha1 = (alloc.alpha1 * scale).num();
  out.alpha2 = (alloc.alpha2 * scale).num();
  out.beta = (params.beta * scale).num();
  for (std::int64_t v : {out.file, out.alpha1, out.alpha2, out.beta}) {
    if (v > cap) {
      throw std::length_error("packetize: " + std::to_string(v) + " packets exceeds cap " + std::to_string(cap));
    }
  }
  return out;
}

std::vector<Symbols> random_source(std::int64_t file_packets, std::size_t payload_size, SplitMix64& rng) {
  std::vector<Symbols> source(static_cast<std::size_t>(file_packets), Symbols(payload_size));
  for (auto& packet : source) {
    for (auto& byte : packet) byte = static_cast<std::uint8_t>(rng.below(256));
  }
  return source;
}

std::vector<NodeState> initial_distribution(const GaloisField& field, const SystemParams& params,
                                            const PacketCounts& counts, SplitMix64& rng,
                                            const std::vector<Symbols>& source) {
  const auto width = static_cast<std::size_t>(counts.file);
  const std::size_t payload = source.empty() ? 0 : source.front().size();
  std::vector<NodeState> states;
  for (int node = 1; node <= params.n(); ++node) {
    NodeState s{node, params.type_of(node), {}};
    for (std::int64_t i = 0; i < counts.alpha_for(s.type); ++i) {
      CodedPacket p{Symbols(width), Symbols(payload, 0)};
      for (auto& c : p.coeffs) c = random_symbol(field, rng);
      for (std::size_t j = 0; j < source.size() && payload; ++j) axpy(field, p.payload, source[j], p.coeffs[j]);
      s.packets.push_back(std::move(p));
    }
    states.push_back(std::move(s));
  }
  return states;
}

NodeState repair(const GaloisField& field, const std::vector<NodeState>& states, int failed,
                 const std::vector<int>& helpers, const SystemParams& params, const PacketCounts& counts,
                 SplitMix64& rng) {
  if (static_cast<int>(helpers.size()) != params.d) {
    throw std::invalid_argument("repair needs d=" + std::to_string(params.d) + " helpers, got " +
                                std::to_string(helpers.size()));
  }
  const auto width = static_cast<std::size_t>(counts.file);
  const auto& old = state_of(states, failed);
  const std::size_t payload = old.packets.empty() ? 0 : old.packets.front().payload.size();

  std::vector<CodedPacket> received;
  for (int h : helpers) {
    if (h == failed) throw std::invalid_argument("node cannot help its own repair");
    const auto& stored = state_of(states, h).packets;
    for (std::int64_t i = 0; i < counts.beta; ++i) received.push_back(combine(field, stored, width, payload, rng));
  }
  NodeState fresh{failed, params.type_of(failed), {}};
  for (std::int64_t i = 0; i < counts.alpha_for(fresh.type); ++i) {
    fresh.packets.push_back(combine(field, received, width, payload, rng));
  }
  return fresh;
}

std::size_t rank(const GaloisField& field, std::vector<Symbols> rows) {
  if (rows.empty()) return 0;
  return eliminate(field, rows, rows.front().size()).size();
}

ReconstructResult reconstruct(const GaloisField& field, const std::vector<NodeState>& states,
                              const std::vector<int>& dc_nodes, std::int64_t file_packets) {
  std::vector<Symbols> rows;
  for (auto& p : gather(states, dc_nodes)) rows.push_back(std::move(p.coeffs));
  const std::size_t r = rows.empty() ? 0 : rank(field, std::move(rows));
  return {static_cast<std::int64_t>(r) == file_packets, r};
}

std::optional<std::vector<Symbols>> decode(const GaloisField& field, const std::vector<NodeState>& states,
                                           const std::vector<int>& dc_nodes, std::int64_t file_packets) {
  const auto width = static_cast<std::size_t>(file_packets);
  std::vector<Symbols> rows;
  for (const auto& p : gather(states, dc_nodes)) {
    Symbols row = p.coeffs;
    row.insert(row.end(), p.payload.begin(), p.payload.end());
    rows.push_back(std::move(row));
  }
  auto pivots = eliminate(field, rows, width);
  if (pivots.size() != width) return std::nullopt;
  // Full rank over the identity block: row i now holds source packet i.
  std::vector<Symbols> source;
  for (std::size_t i = 0; i < width; ++i) source.emplace_back(rows[i].begin() + static_cast<std::ptrdiff_t>(width), rows[i].end());
  return source;
}

SimulationReport simulate(const SimulationConfig& cfg) {
  require_valid(cfg.params);
  if (cfg.trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
  const GaloisField field(cfg.field);
  SimulationReport report;
  report.counts = packetize(cfg.params, cfg.alloc, cfg.packet_cap);
  report.trials = cfg.trials;

  const bool exhaustive = std::holds_alternative<ExhaustiveDcs>(cfg.collectors);
  if (exhaustive) {
    for (auto& nodes : all_collectors(cfg.params.n(), cfg.params.k)) report.per_collector.push_back({nodes, 0, 0});
  }
  std::vector<int> pool(static_cast<std::size_t>(cfg.params.n()));
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i) + 1;

  const SplitMix64 root(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    SplitMix64 rng = root.split(static_cast<std::uint64_t>(t));
    // Payload bytes come from a side stream so coefficients match coefficient-only runs.
    SplitMix64 bytes = rng.split(~0ULL);
    const auto source = cfg.payload_size ? random_source(report.counts.file, cfg.payload_size, bytes)
                                         : std::vector<Symbols>{};
    auto states = initial_distribution(field, cfg.params, report.counts, rng, source);
    for (const auto& ev : random_history(cfg.params, cfg.repairs, rng.next())) {
      auto fresh = repair(field, states, ev.failed_node, ev.helpers, cfg.params, report.counts, rng);
      states[static_cast<std::size_t>(ev.failed_node - 1)] = std::move(fresh);
    }

    auto attempt = [&](const std::vector<int>& nodes) {
      bool ok;
      if (cfg.payload_size) {
        auto got = decode(field, states, nodes, report.counts.file);
        ok = got && *got == source;
      } else {
        ok = reconstruct(field, states, nodes, report.counts.file).success;
      }
      ++report.attempts;
      report.successes += ok;
      return ok;
    };

    bool all_ok = true;
    if (exhaustive) {
      for (auto& tally : report.per_collector) {
        bool ok = attempt(tally.nodes);
        ++tally.attempts;
        tally.successes += ok;
        all_ok = all_ok && ok;
      }
    } else {
      const auto& sampled = std::get<SampledDcs>(cfg.collectors);
      for (int i = 0; i < sampled.count; ++i) {
        auto nodes = rng.sample(pool, static_cast<std::size_t>(cfg.params.k));
        std::sort(nodes.begin(), nodes.end());
        all_ok = attempt(nodes) && all_ok;
      }
    }
    report.successful_trials += all_ok;
  }
  return report;
}

}  // namespace regenalloc
