#include "regenalloc/constraints.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace regenalloc {
namespace {

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return out;
}

// Bandwidth term of position i (1-based).
Ratio position_bandwidth(int i, const SystemParams& p) { return p.beta * (p.d - i + 1); }

}  // namespace

Ratio theta(int m, const SystemParams& p) {
  if (m < 0 || m > p.k) {
    throw std::out_of_range("theta: m=" + std::to_string(m) + " outside [0, " + std::to_string(p.k) + "]");
  }
  return Ratio(static_cast<std::int64_t>(p.k - m) * (2 * p.d - p.k - m + 1)) * p.beta / 2;
}

Ratio min_beta(const SystemParams& p) {
  return p.file_size * 2 / (static_cast<std::int64_t>(p.k) * (2 * p.d - p.k + 1));
}

std::vector<CompactRow> generate_rows(const SystemParams& p) {
  std::vector<CompactRow> rows;
  rows.reserve(static_cast<std::size_t>(2 * (p.k + 1)));
  for (int m = 0; m <= p.k; ++m) {
    const Ratio rhs = p.file_size - theta(m, p);
    const int most1 = std::min(m, p.n1);
    const int most2 = std::min(m, p.n2);
    rows.push_back({m, RowKind::MostType1, {most1, m - most1, rhs}});
    rows.push_back({m, RowKind::MostType2, {m - most2, most2, rhs}});
  }
  return rows;
}

std::vector<HalfPlane> generate_constraints(const SystemParams& p) {
  std::vector<HalfPlane> planes;
  for (const auto& row : generate_rows(p)) planes.push_back(row.plane);
  return planes;
}

bool is_admissible(const AlphaVector& vec, const SystemParams& p) {
  if (static_cast<int>(vec.size()) != p.k) return false;
  auto ones = std::count(vec.begin(), vec.end(), NodeType::Type1);
  auto twos = static_cast<std::ptrdiff_t>(vec.size()) - ones;
  return ones <= p.n1 && twos <= p.n2;
}

std::vector<AlphaVector> enumerate_alpha_vectors(const SystemParams& p) {
  std::vector<AlphaVector> out;
  if (p.k < 1 || p.k > 62) return out;
  const std::uint64_t total = std::uint64_t{1} << p.k;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    AlphaVector vec(static_cast<std::size_t>(p.k));
    // Most significant bit is position 1 so the order is lexicographic.
    for (int i = 0; i < p.k; ++i) {
      vec[static_cast<std::size_t>(i)] = (bits >> (p.k - 1 - i)) & 1 ? NodeType::Type2 : NodeType::Type1;
    }
    if (is_admissible(vec, p)) out.push_back(std::move(vec));
  }
  return out;
}

std::uint64_t count_alpha_vectors(const SystemParams& p) {
  std::uint64_t total = 0;
  for (int ones = 0; ones <= p.k; ++ones) {
    if (ones <= p.n1 && p.k - ones <= p.n2) total += binomial(p.k, ones);
  }
  return total;
}

Ratio mincut_bound(const AlphaVector& vec, const Allocation& alloc, const SystemParams& p) {
  Ratio total = 0;
  for (std::size_t idx = 0; idx < vec.size(); ++idx) {
    const int i = static_cast<int>(idx) + 1;
    total += min(alloc.alpha_for(vec[idx]), position_bandwidth(i, p));
  }
  return total;
}

std::vector<MinTerm> mincut_terms(const AlphaVector& vec, const SystemParams& p) {
  std::vector<MinTerm> terms;
  for (std::size_t idx = 0; idx < vec.size(); ++idx) {
    terms.push_back({vec[idx], p.d - static_cast<int>(idx)});
  }
  return terms;
}

std::string format_terms(const std::vector<MinTerm>& terms) {
  std::ostringstream os;
  os << "M <= ";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    os << "min{" << (terms[i].type == NodeType::Type1 ? "alpha1" : "alpha2") << ", " << terms[i].helpers
       << "beta}";
  }
  return os.str();
}

std::vector<HalfPlane> raw_constraint_set(const SystemParams& p, const RawOptions& options) {
  const std::uint64_t vectors = count_alpha_vectors(p);
  if (p.k >= 40 || vectors > (options.cap >> p.k)) {
    throw std::length_error("raw_constraint_set: |A|*2^k exceeds cap " + std::to_string(options.cap));
  }
  const std::uint64_t masks = std::uint64_t{1} << p.k;
  std::vector<HalfPlane> out;

  if (options.enumeration == RawEnumeration::Ordered) {
    out.reserve(vectors * masks);
    for (const auto& vec : enumerate_alpha_vectors(p)) {
      for (std::uint64_t mask = 0; mask < masks; ++mask) {
        // Bit i-1 set selects the bandwidth term (d-i+1)beta for position i.
        HalfPlane hp{0, 0, p.file_size};
        for (int i = 1; i <= p.k; ++i) {
          if ((mask >> (i - 1)) & 1) {
            hp.rhs -= position_bandwidth(i, p);
          } else if (vec[static_cast<std::size_t>(i - 1)] == NodeType::Type1) {
            hp.coef1 += 1;
          } else {
            hp.coef2 += 1;
          }
        }
        out.push_back(hp);
      }
    }
    return out;
  }

  // Per composition (ones, twos), a mask with m storage positions admits any
  // split of those positions into `s` type-1 and m-s type-2 slots that some
  // ordering of the composition realizes.
  for (int ones = 0; ones <= p.k; ++ones) {
    const int twos = p.k - ones;
    if (ones > p.n1 || twos > p.n2) continue;
    std::set<HalfPlane> distinct;
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      int m = 0;
      Ratio rhs = p.file_size;
      for (int i = 1; i <= p.k; ++i) {
        if ((mask >> (i - 1)) & 1) {
          rhs -= position_bandwidth(i, p);
        } else {
          ++m;
        }
      }
      for (int s = std::max(0, m - twos); s <= std::min(m, ones); ++s) {
        distinct.insert({s, m - s, rhs});
      }
    }
    out.insert(out.end(), distinct.begin(), distinct.end());
  }
  return out;
}

bool is_feasible(const Allocation& alloc, const std::vector<HalfPlane>& planes) {
  return std::all_of(planes.begin(), planes.end(), [&](const HalfPlane& hp) { return hp.contains(alloc); });
}

}  // namespace regenalloc
