#include "oracles.hpp"

#include <stdexcept>

namespace regenalloc::oracle {

Ratio theta_by_summation(int m, const SystemParams& p) {
  Ratio total = 0;
  for (int i = m + 1; i <= p.k; ++i) total += Ratio(p.d - i + 1) * p.beta;
  return total;
}

Ratio homogeneous_alpha(const SystemParams& p) {
  Ratio best = p.file_size - theta_by_summation(1, p);
  for (int m = 2; m <= p.k; ++m) {
    Ratio v = (p.file_size - theta_by_summation(m, p)) / m;
    if (v > best) best = v;
  }
  return best;
}

namespace {

bool better(const SystemParams& p, const Allocation& a, const std::optional<Allocation>& incumbent) {
  if (!incumbent) return true;
  Ratio ca = storage_cost(p, a);
  Ratio cb = storage_cost(p, *incumbent);
  return ca < cb || (ca == cb && a < *incumbent);
}

bool satisfies(const Allocation& a, const std::vector<HalfPlane>& planes) {
  for (const auto& hp : planes) {
    if (hp.coef1 * a.alpha1 + hp.coef2 * a.alpha2 < hp.rhs) return false;
  }
  return true;
}

}  // namespace

std::optional<Allocation> grid_oracle(const SystemParams& p, const std::vector<HalfPlane>& planes,
                                      const Ratio& step, const Ratio& bound) {
  if (step.sign() <= 0) throw std::invalid_argument("grid_oracle: step must be positive");
  const std::int64_t cells = (bound / step).floor();
  std::optional<Allocation> best;
  for (std::int64_t i = 0; i <= cells; ++i) {
    const Ratio a1 = step * i;
    // Smallest lattice index j with every plane satisfied at (a1, j*step).
    std::int64_t j = 0;
    bool column_ok = true;
    for (const auto& hp : planes) {
      Ratio shortfall = hp.rhs - hp.coef1 * a1;
      if (hp.coef2.is_zero()) {
        if (shortfall.sign() > 0) column_ok = false;
        continue;
      }
      if (shortfall.sign() <= 0) continue;
      j = std::max(j, (shortfall / hp.coef2 / step).ceil());
    }
    if (!column_ok || j > cells) continue;
    Allocation cand{a1, step * j};
    // The column's rows above j are feasible but never cheaper.
    if (!satisfies(cand, planes)) throw std::logic_error("grid_oracle: column bound not feasible");
    if (better(p, cand, best)) best = cand;
  }
  return best;
}

std::optional<Allocation> grid_oracle(const SystemParams& p, const Ratio& step, const Ratio& bound) {
  return grid_oracle(p, generate_constraints(p), step, bound);
}

std::optional<Allocation> grid_scan(const SystemParams& p, const std::vector<HalfPlane>& planes,
                                    const Ratio& step, const Ratio& bound) {
  const std::int64_t cells = (bound / step).floor();
  std::optional<Allocation> best;
  for (std::int64_t i = 0; i <= cells; ++i) {
    for (std::int64_t j = 0; j <= cells; ++j) {
      Allocation cand{step * i, step * j};
      if (satisfies(cand, planes) && better(p, cand, best)) best = cand;
    }
  }
  return best;
}

std::optional<Ratio> brute_force_min_cut(const FlowGraph& g, int source, int sink) {
  const int nv = static_cast<int>(g.vertices().size());
  std::vector<int> free;
  for (int v = 0; v < nv; ++v) {
    if (v != source && v != sink) free.push_back(v);
  }
  if (free.size() > 24) throw std::invalid_argument("brute_force_min_cut: graph too large");

  std::optional<Ratio> best;
  std::vector<char> in_source_side(static_cast<std::size_t>(nv));
  const std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::fill(in_source_side.begin(), in_source_side.end(), 0);
    in_source_side[static_cast<std::size_t>(source)] = 1;
    for (std::size_t b = 0; b < free.size(); ++b) {
      if ((mask >> b) & 1) in_source_side[static_cast<std::size_t>(free[b])] = 1;
    }
    Ratio cut = 0;
    bool infinite = false;
    for (const auto& e : g.edges()) {
      if (in_source_side[static_cast<std::size_t>(e.tail)] && !in_source_side[static_cast<std::size_t>(e.head)]) {
        if (!e.capacity) {
          infinite = true;
          break;
        }
        cut += *e.capacity;
      }
    }
    if (!infinite && (!best || cut < *best)) best = cut;
  }
  return best;
}

}  // namespace regenalloc::oracle
