#include "regenalloc/tradeoff.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

#include "regenalloc/constraints.hpp"

namespace regenalloc {

std::vector<Ratio> beta_samples(const Ratio& lo, const Ratio& hi, int steps) {
  if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
  if (hi < lo) throw std::invalid_argument("sweep: upper bound below lower bound");
  std::vector<Ratio> out;
  const Ratio span = hi - lo;
  for (int i = 0; i < steps; ++i) out.push_back(lo + span * i / (steps - 1));
  return out;
}

std::vector<TradeoffPoint> sweep(const SystemParams& params, const Ratio& lo, const Ratio& hi, int steps) {
  auto betas = beta_samples(lo, hi, steps);
  const SystemParams base = params.with_beta(lo);
  require_valid(base);
  if (lo < min_beta(base)) {
    throw InfeasibleError(min_beta(base), {0, 0, base.file_size - theta(0, base)});
  }
  std::vector<TradeoffPoint> out;
  out.reserve(betas.size());
  for (const auto& b : betas) {
    auto opt = solve(params.with_beta(b));
    out.push_back({b, b * params.d, opt.point.alpha1, opt.point.alpha2, opt.cost});
  }
  return out;
}

RegionBoundary region_boundary(const SystemParams& params) {
  // solve() validates and rejects infeasible beta.
  (void)solve(params);
  const auto all = vertices(generate_constraints(params));

  RegionBoundary out;
  for (const auto& v : all) {
    bool dominated = std::any_of(all.begin(), all.end(), [&](const Allocation& w) {
      return w != v && w.alpha1 <= v.alpha1 && w.alpha2 <= v.alpha2;
    });
    if (!dominated) out.corners.push_back(v);
  }
  // Vertices are sorted by alpha1; Pareto-minimal ones then have falling alpha2.

  Ratio extent = 0;
  for (const auto& c : out.corners) extent = max(extent, max(c.alpha1, c.alpha2));
  const Ratio tail = extent * kTailNumerator / kTailDenominator;

  const Allocation& first = out.corners.front();
  const Allocation& last = out.corners.back();
  out.polyline.push_back({first.alpha1, max(tail, first.alpha2)});
  out.polyline.insert(out.polyline.end(), out.corners.begin(), out.corners.end());
  out.polyline.push_back({max(tail, last.alpha1), last.alpha2});
  return out;
}

void write_tradeoff_csv(std::ostream& os, const std::vector<TradeoffPoint>& points, int precision) {
  os << "beta,d_beta,alpha1,alpha2,cost\n";
  for (const auto& p : points) {
    os << p.beta.to_decimal(precision) << ',' << p.repair_bandwidth.to_decimal(precision) << ','
       << p.alpha1.to_decimal(precision) << ',' << p.alpha2.to_decimal(precision) << ','
       << p.cost.to_decimal(precision) << '\n';
  }
}

namespace {

// Emits a decimal string as a raw JSON number so precision is exact.
nlohmann::json number(const Ratio& r, int precision) {
  return nlohmann::json::parse(r.to_decimal(precision));
}

}  // namespace

void write_tradeoff_json(std::ostream& os, const std::vector<TradeoffPoint>& points, int precision) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    nlohmann::ordered_json obj;
    obj["beta"] = number(p.beta, precision);
    obj["d_beta"] = number(p.repair_bandwidth, precision);
    obj["alpha1"] = number(p.alpha1, precision);
    obj["alpha2"] = number(p.alpha2, precision);
    obj["cost"] = number(p.cost, precision);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

void write_region_csv(std::ostream& os, const RegionBoundary& boundary, int precision) {
  os << "index,kind,alpha1,alpha2\n";
  for (std::size_t i = 0; i < boundary.polyline.size(); ++i) {
    const bool tail = i == 0 || i + 1 == boundary.polyline.size();
    os << i << ',' << (tail ? "tail" : "corner") << ',' << boundary.polyline[i].alpha1.to_decimal(precision) << ','
       << boundary.polyline[i].alpha2.to_decimal(precision) << '\n';
  }
}

void write_region_json(std::ostream& os, const RegionBoundary& boundary, int precision) {
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < boundary.polyline.size(); ++i) {
    const bool tail = i == 0 || i + 1 == boundary.polyline.size();
    nlohmann::ordered_json obj;
    obj["index"] = i;
    obj["kind"] = tail ? "tail" : "corner";
    obj["alpha1"] = number(boundary.polyline[i].alpha1, precision);
    obj["alpha2"] = number(boundary.polyline[i].alpha2, precision);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

}  // namespace regenalloc
