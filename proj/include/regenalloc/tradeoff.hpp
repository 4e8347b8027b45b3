#pragma once

#include <iosfwd>
#include <vector>

#include "regenalloc/lp.hpp"
#include "regenalloc/params.hpp"

namespace regenalloc {

struct TradeoffPoint {
  Ratio beta;
  Ratio repair_bandwidth;  // d * beta
  Ratio alpha1;
  Ratio alpha2;
  Ratio cost;
};

/// Evenly spaced betas lo + i(hi-lo)/(steps-1), endpoints included.
std::vector<Ratio> beta_samples(const Ratio& lo, const Ratio& hi, int steps);

/// Optimum at each sampled beta. params.beta is ignored.
/// Throws InfeasibleError if lo < min_beta, std::invalid_argument if
/// steps < 2 or hi < lo.
std::vector<TradeoffPoint> sweep(const SystemParams& params, const Ratio& lo, const Ratio& hi, int steps);

/// Factor applied to the largest vertex coordinate to cut the unbounded tails.
inline constexpr std::int64_t kTailNumerator = 3;
inline constexpr std::int64_t kTailDenominator = 2;

/// Lower-left boundary of the feasible region for plotting. `corners` are
/// the Pareto-minimal vertices in increasing alpha1 order; `polyline`
/// prepends the vertical tail endpoint above the first corner and appends
/// the horizontal tail endpoint right of the last one.
struct RegionBoundary {
  std::vector<Allocation> corners;
  std::vector<Allocation> polyline;
};

RegionBoundary region_boundary(const SystemParams& params);

// CSV: header "beta,d_beta,alpha1,alpha2,cost". JSON: array of objects with
// the same keys. Values are decimals with `precision` significant digits.
void write_tradeoff_csv(std::ostream& os, const std::vector<TradeoffPoint>& points, int precision = 12);
void write_tradeoff_json(std::ostream& os, const std::vector<TradeoffPoint>& points, int precision = 12);

// CSV: header "index,kind,alpha1,alpha2"; kind is corner or tail.
void write_region_csv(std::ostream& os, const RegionBoundary& boundary, int precision = 12);
void write_region_json(std::ostream& os, const RegionBoundary& boundary, int precision = 12);

}  // namespace regenalloc
