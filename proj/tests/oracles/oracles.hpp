#pragma once

// Independent reference computations used only by tests.

#include <optional>
#include <vector>

#include "regenalloc/constraints.hpp"
#include "regenalloc/flowgraph.hpp"
#include "regenalloc/params.hpp"

namespace regenalloc::oracle {

/// sum_{i=m+1}^{k} (d-i+1) beta, term by term.
Ratio theta_by_summation(int m, const SystemParams& params);

/// max_{1<=m<=k} (M - theta_m)/m with theta from the summation above.
Ratio homogeneous_alpha(const SystemParams& params);

/// Cheapest feasible point of the lattice {0, step, 2 step, ...}^2 clipped to
/// [0, bound]^2 under `planes`; ties go to the lexicographically smallest.
/// Each column is resolved by locating its lowest feasible lattice row
/// exactly, which yields the same answer as testing every lattice point.
std::optional<Allocation> grid_oracle(const SystemParams& params, const std::vector<HalfPlane>& planes,
                                      const Ratio& step, const Ratio& bound);
std::optional<Allocation> grid_oracle(const SystemParams& params, const Ratio& step, const Ratio& bound);

/// Literal point-by-point scan of the same lattice. Only for tiny grids.
std::optional<Allocation> grid_scan(const SystemParams& params, const std::vector<HalfPlane>& planes,
                                    const Ratio& step, const Ratio& bound);

/// Minimum (source, sink) cut capacity over every bipartition of the other
/// vertices. Unbounded edges never cross a cut that is counted. nullopt if
/// every cut crosses an unbounded edge.
std::optional<Ratio> brute_force_min_cut(const FlowGraph& graph, int source, int sink);

}  // namespace regenalloc::oracle
