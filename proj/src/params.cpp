#include "regenalloc/params.hpp"

#include <sstream>
#include <stdexcept>

namespace regenalloc {

SystemParams SystemParams::swapped() const {
  SystemParams out = *this;
  std::swap(out.n1, out.n2);
  std::swap(out.c1, out.c2);
  return out;
}

SystemParams SystemParams::with_beta(const Ratio& b) const {
  SystemParams out = *this;
  out.beta = b;
  return out;
}

Allocation operator+(const Allocation& a, const Allocation& b) {
  return {a.alpha1 + b.alpha1, a.alpha2 + b.alpha2};
}

Allocation operator*(const Ratio& scale, const Allocation& a) {
  return {scale * a.alpha1, scale * a.alpha2};
}

std::string ValidationReport::message() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ValidationReport validate(const SystemParams& p) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  const int n = p.n();

  if (p.n1 < 0) fail("n1 must be >= 0 (n1=" + std::to_string(p.n1) + ")");
  if (p.n2 < 0) fail("n2 must be >= 0 (n2=" + std::to_string(p.n2) + ")");
  if (n < 1) fail("n = n1 + n2 must be >= 1 (n=" + std::to_string(n) + ")");
  if (p.k < 1) fail("k must be >= 1 (k=" + std::to_string(p.k) + ")");
  if (p.k > n) fail("k must be <= n (k=" + std::to_string(p.k) + ", n=" + std::to_string(n) + ")");
  if (p.d < p.k) fail("d must be >= k (d=" + std::to_string(p.d) + ", k=" + std::to_string(p.k) + ")");
  if (p.d > n - 1) {
    fail("d must be <= n-1 (d=" + std::to_string(p.d) + ", n=" + std::to_string(n) + ")");
  }
  if (p.file_size.sign() <= 0) fail("file size M must be > 0 (M=" + p.file_size.to_string() + ")");
  if (p.beta.sign() < 0) fail("beta must be >= 0 (beta=" + p.beta.to_string() + ")");
  if (p.c1.sign() <= 0) fail("c1 must be > 0 (c1=" + p.c1.to_string() + ")");
  if (p.c2.sign() <= 0) fail("c2 must be > 0 (c2=" + p.c2.to_string() + ")");
  return report;
}

void require_valid(const SystemParams& params) {
  auto report = validate(params);
  if (!report.ok()) throw std::invalid_argument("invalid parameters: " + report.message());
}

Ratio storage_cost(const SystemParams& p, const Allocation& alloc) {
  return p.c1 * p.n1 * alloc.alpha1 + p.c2 * p.n2 * alloc.alpha2;
}

}  // namespace regenalloc
