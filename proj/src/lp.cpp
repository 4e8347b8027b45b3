#include "regenalloc/lp.hpp"

#include <algorithm>
#include <optional>

namespace regenalloc {
namespace {

std::optional<Allocation> intersect(const HalfPlane& a, const HalfPlane& b) {
  // Cramer's rule on the two boundary lines.
  Ratio det = a.coef1 * b.coef2 - a.coef2 * b.coef1;
  if (det.is_zero()) return std::nullopt;
  Ratio x = (a.rhs * b.coef2 - a.coef2 * b.rhs) / det;
  Ratio y = (a.coef1 * b.rhs - a.rhs * b.coef1) / det;
  return Allocation{x, y};
}

void check_feasible_beta(const SystemParams& p) {
  for (const auto& row : generate_rows(p)) {
    if (row.plane.is_degenerate() && row.plane.rhs.sign() > 0) {
      throw InfeasibleError(min_beta(p), row.plane);
    }
  }
}

std::vector<std::size_t> binding_rows(const std::vector<HalfPlane>& planes, const Allocation& at) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    if (planes[i].is_tight(at)) out.push_back(i);
  }
  return out;
}

}  // namespace

CaseLabel classify(const SystemParams& p) {
  const bool big1 = p.n1 >= p.k;
  const bool big2 = p.n2 >= p.k;
  if (big1 && big2) return CaseLabel::A;
  if (big1) return CaseLabel::B;
  if (big2) return CaseLabel::C;
  return CaseLabel::D;
}

char to_char(CaseLabel label) {
  switch (label) {
    case CaseLabel::A: return 'A';
    case CaseLabel::B: return 'B';
    case CaseLabel::C: return 'C';
    case CaseLabel::D: return 'D';
  }
  return '?';
}

InfeasibleError::InfeasibleError(Ratio beta_min, HalfPlane row)
    : std::runtime_error("infeasible: beta must be at least " + beta_min.to_decimal() + " (m=0 row 0 >= " +
                         row.rhs.to_decimal() + " fails)"),
      beta_min_(beta_min),
      row_(row) {}

std::vector<Allocation> vertices(const std::vector<HalfPlane>& planes) {
  std::vector<HalfPlane> lines;
  for (const auto& hp : planes) {
    if (!hp.is_degenerate()) lines.push_back(hp);
  }
  lines.push_back({1, 0, 0});  // alpha1 >= 0
  lines.push_back({0, 1, 0});  // alpha2 >= 0

  std::vector<Allocation> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto pt = intersect(lines[i], lines[j]);
      if (!pt || pt->alpha1.sign() < 0 || pt->alpha2.sign() < 0) continue;
      if (is_feasible(*pt, planes)) out.push_back(*pt);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OptimalAllocation solve(const SystemParams& p) {
  require_valid(p);
  check_feasible_beta(p);
  const auto planes = generate_constraints(p);
  const auto candidates = vertices(planes);
  // Upward closure and the quadrant guarantee at least one vertex.
  if (candidates.empty()) throw std::logic_error("solve: feasible region has no vertex");

  // Candidates are sorted, so the first minimum is the lexicographic tie-break.
  const Allocation* best = nullptr;
  Ratio best_cost;
  for (const auto& v : candidates) {
    Ratio cost = storage_cost(p, v);
    if (!best || cost < best_cost) {
      best = &v;
      best_cost = cost;
    }
  }
  return {*best, best_cost, binding_rows(planes, *best), classify(p)};
}

OptimalAllocation case_a_closed_form(const SystemParams& p) {
  require_valid(p);
  if (p.n1 < p.k || p.n2 < p.k) {
    throw CaseMismatch("case_a_closed_form requires n1 >= k and n2 >= k (n1=" + std::to_string(p.n1) +
                       ", n2=" + std::to_string(p.n2) + ", k=" + std::to_string(p.k) + ")");
  }
  check_feasible_beta(p);
  Ratio mu = (p.file_size - theta(1, p)) / 1;
  for (int m = 2; m <= p.k; ++m) mu = max(mu, (p.file_size - theta(m, p)) / m);
  Allocation at{mu, mu};
  return {at, storage_cost(p, at), binding_rows(generate_constraints(p), at), CaseLabel::A};
}

Allocation corner_point(int m, const SystemParams& p) {
  if (m < 1 || m > p.k) {
    throw std::out_of_range("corner_point: m=" + std::to_string(m) + " outside [1, " + std::to_string(p.k) + "]");
  }
  Ratio slack = p.file_size - theta(m, p);
  if (slack.sign() <= 0) return {0, 0};
  Ratio v = slack / m;
  return {v, v};
}

}  // namespace regenalloc
