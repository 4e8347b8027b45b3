#pragma once

#include <stdexcept>
#include <vector>

#include "regenalloc/constraints.hpp"
#include "regenalloc/params.hpp"

namespace regenalloc {

/// Region shape by whether each class alone can serve a data collector.
enum class CaseLabel { A, B, C, D };

CaseLabel classify(const SystemParams& params);
char to_char(CaseLabel label);

struct OptimalAllocation {
  Allocation point;
  Ratio cost;
  /// Indices into generate_constraints() that hold with equality.
  std::vector<std::size_t> binding;
  CaseLabel case_label = CaseLabel::A;
};

/// beta is below min_beta(); carries the threshold and the failing m=0 row.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(Ratio beta_min, HalfPlane row);

  const Ratio& beta_min() const noexcept { return beta_min_; }
  const HalfPlane& row() const noexcept { return row_; }

 private:
  Ratio beta_min_;
  HalfPlane row_;
};

class CaseMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Minimum-cost feasible allocation by exact vertex enumeration.
///
/// Every constraint has non-negative coefficients, so the feasible set is
/// upward closed and the positive objective attains its minimum at a vertex
/// of the region intersected with the non-negative quadrant. Ties resolve to
/// the lexicographically smallest (alpha1, alpha2).
OptimalAllocation solve(const SystemParams& params);

/// Feasible candidate vertices of planes within the non-negative quadrant:
/// pairwise boundary intersections with the constraint lines and the two
/// axes. Degenerate rows only filter. Deduplicated, sorted.
std::vector<Allocation> vertices(const std::vector<HalfPlane>& planes);

/// alpha1* = alpha2* = max_{1<=m<=k} (M - theta_m)/m; requires n1, n2 >= k.
OptimalAllocation case_a_closed_form(const SystemParams& params);

/// Apex of region R_m, on the diagonal; (0,0) when theta_m >= M.
Allocation corner_point(int m, const SystemParams& params);

}  // namespace regenalloc
