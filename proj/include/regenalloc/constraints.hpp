#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regenalloc/params.hpp"
#include "regenalloc/ratio.hpp"

namespace regenalloc {

/// coef1*alpha1 + coef2*alpha2 >= rhs.
struct HalfPlane {
  Ratio coef1;
  Ratio coef2;
  Ratio rhs;

  bool contains(const Allocation& a) const { return coef1 * a.alpha1 + coef2 * a.alpha2 >= rhs; }
  bool is_tight(const Allocation& a) const { return coef1 * a.alpha1 + coef2 * a.alpha2 == rhs; }
  /// coef1 = coef2 = 0: holds everywhere iff rhs <= 0.
  bool is_degenerate() const noexcept { return coef1.is_zero() && coef2.is_zero(); }

  friend bool operator==(const HalfPlane&, const HalfPlane&) = default;
  friend auto operator<=>(const HalfPlane&, const HalfPlane&) = default;
};

/// Which bound of the compact system a generated row comes from.
enum class RowKind { MostType1, MostType2 };

/// A row of the compact min-cut system, tagged with its origin.
struct CompactRow {
  int m = 0;
  RowKind kind = RowKind::MostType1;
  HalfPlane plane;
};

/// Ordered length-k vector of node types; type i may appear at most n_i times.
using AlphaVector = std::vector<NodeType>;

/// (k-m)(2d-k-m+1)beta/2, the bandwidth contributed by positions m+1..k.
Ratio theta(int m, const SystemParams& params);

/// 2M / (k(2d-k+1)); the compact system is feasible iff beta >= this.
Ratio min_beta(const SystemParams& params);

/// The 2(k+1) rows, ordered m = 0..k with the most-type-1 row before the
/// most-type-2 row for each m. Coinciding rows are kept.
std::vector<CompactRow> generate_rows(const SystemParams& params);
std::vector<HalfPlane> generate_constraints(const SystemParams& params);

/// True iff vec has length k and respects the per-type multiplicity caps.
bool is_admissible(const AlphaVector& vec, const SystemParams& params);

/// Every admissible vector, in lexicographic order (Type1 < Type2).
std::vector<AlphaVector> enumerate_alpha_vectors(const SystemParams& params);

/// Number of admissible ordered vectors without enumerating them.
std::uint64_t count_alpha_vectors(const SystemParams& params);

/// sum_i min{alpha(i), (d-i+1)beta}.
Ratio mincut_bound(const AlphaVector& vec, const Allocation& alloc, const SystemParams& params);

/// Symbolic term min{alpha_type, helpers*beta} of a min-cut bound.
struct MinTerm {
  NodeType type;
  int helpers;  // d - i + 1

  friend bool operator==(const MinTerm&, const MinTerm&) = default;
};
std::vector<MinTerm> mincut_terms(const AlphaVector& vec, const SystemParams& params);
std::string format_terms(const std::vector<MinTerm>& terms);

enum class RawEnumeration {
  /// One entry per type composition; the distinct half-planes over all
  /// orderings of that composition.
  Multiset,
  /// The literal |A| * 2^k expansion over ordered vectors.
  Ordered,
};

struct RawOptions {
  RawEnumeration enumeration = RawEnumeration::Multiset;
  std::uint64_t cap = 1'000'000;
};

/// Expands every min-cut bound into the linear inequalities obtained by
/// choosing, per position, either the storage term or the bandwidth term.
/// Throws std::length_error when |A| * 2^k exceeds the cap.
std::vector<HalfPlane> raw_constraint_set(const SystemParams& params, const RawOptions& options = {});

bool is_feasible(const Allocation& alloc, const std::vector<HalfPlane>& planes);

}  // namespace regenalloc
