#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regenalloc/flowgraph.hpp"
#include "regenalloc/gf.hpp"
#include "regenalloc/params.hpp"
#include "regenalloc/rng.hpp"

namespace regenalloc {

using Symbols = std::vector<std::uint8_t>;

/// A stored or transmitted packet: its global coding vector over the
/// file's M_p source packets and, optionally, the coded payload bytes.
struct CodedPacket {
  Symbols coeffs;
  Symbols payload;
};

struct NodeState {
  int node = 0;
  NodeType type = NodeType::Type1;
  std::vector<CodedPacket> packets;
};

/// File size, per-class storage, and per-helper download in packets.
struct PacketCounts {
  std::int64_t file = 0;
  std::int64_t alpha1 = 0;
  std::int64_t alpha2 = 0;
  std::int64_t beta = 0;
  std::int64_t scale = 1;  // packets per data unit

  std::int64_t alpha_for(NodeType t) const noexcept { return t == NodeType::Type1 ? alpha1 : alpha2; }
};

/// Multiplies M, alpha1, alpha2 and beta by the lcm of their denominators.
/// Throws std::length_error if any count exceeds cap.
PacketCounts packetize(const SystemParams& params, const Allocation& alloc, std::int64_t cap = 10'000);

/// Source packets of `payload_size` random bytes each, one per file packet.
std::vector<Symbols> random_source(std::int64_t file_packets, std::size_t payload_size, SplitMix64& rng);

/// Every node stores its alpha_p packets with uniformly random coding
/// vectors. Payloads are encoded from `source` when it is non-empty.
std::vector<NodeState> initial_distribution(const GaloisField& field, const SystemParams& params,
                                            const PacketCounts& counts, SplitMix64& rng,
                                            const std::vector<Symbols>& source = {});

/// Functional repair: each helper sends beta_p random combinations of its
/// packets; the newcomer keeps alpha_p random combinations of what arrived.
NodeState repair(const GaloisField& field, const std::vector<NodeState>& states, int failed,
                 const std::vector<int>& helpers, const SystemParams& params, const PacketCounts& counts,
                 SplitMix64& rng);

/// Rank of a set of vectors of equal length (Gaussian elimination).
std::size_t rank(const GaloisField& field, std::vector<Symbols> rows);

struct ReconstructResult {
  bool success = false;
  std::size_t rank = 0;
};

/// Success iff the collected coding vectors span the whole file.
ReconstructResult reconstruct(const GaloisField& field, const std::vector<NodeState>& states,
                              const std::vector<int>& dc_nodes, std::int64_t file_packets);

/// Solves for the source packets from the collected payloads, if decodable.
std::optional<std::vector<Symbols>> decode(const GaloisField& field, const std::vector<NodeState>& states,
                                           const std::vector<int>& dc_nodes, std::int64_t file_packets);

struct SimulationConfig {
  SystemParams params;
  Allocation alloc;
  FieldKind field = FieldKind::GF256;
  int trials = 200;
  int repairs = 5;
  std::uint64_t seed = 1;
  DcPolicy collectors = ExhaustiveDcs{};
  std::size_t payload_size = 0;  // 0 = coefficient-only
  std::int64_t packet_cap = 10'000;
};

struct CollectorTally {
  std::vector<int> nodes;
  int attempts = 0;
  int successes = 0;
};

struct SimulationReport {
  PacketCounts counts;
  int trials = 0;
  int successful_trials = 0;  // every evaluated collector reconstructed
  int attempts = 0;
  int successes = 0;
  std::vector<CollectorTally> per_collector;  // exhaustive policy only

  double trial_rate() const { return trials ? static_cast<double>(successful_trials) / trials : 0.0; }
  double collector_rate() const { return attempts ? static_cast<double>(successes) / attempts : 0.0; }
};

/// Trial t draws everything from SplitMix64(seed).split(t): the initial
/// distribution, a random repair history, then collectors are evaluated
/// on the final state.
SimulationReport simulate(const SimulationConfig& config);

}  // namespace regenalloc
