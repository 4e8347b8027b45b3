#pragma once

#include <string>
#include <vector>

#include "regenalloc/ratio.hpp"

namespace regenalloc {

/// Node cost class. Nodes 1..n1 are Type1, nodes n1+1..n are Type2.
enum class NodeType { Type1, Type2 };

/// One problem instance: two node classes sharing a regenerating code with
/// reconstruction degree k and repair degree d.
struct SystemParams {
  int n1 = 0;
  int n2 = 0;
  int k = 1;
  int d = 1;
  Ratio file_size = 1;  // M
  Ratio beta = 0;       // units downloaded from each helper
  Ratio c1 = 1;         // cost per unit stored on a type-1 node
  Ratio c2 = 1;         // cost per unit stored on a type-2 node

  int n() const noexcept { return n1 + n2; }
  NodeType type_of(int node) const noexcept { return node <= n1 ? NodeType::Type1 : NodeType::Type2; }
  Ratio repair_bandwidth() const { return beta * d; }

  /// Same instance with the classes exchanged (n1<->n2, c1<->c2).
  SystemParams swapped() const;
  SystemParams with_beta(const Ratio& b) const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Storage per node of each class.
struct Allocation {
  Ratio alpha1 = 0;
  Ratio alpha2 = 0;

  const Ratio& alpha_for(NodeType type) const noexcept {
    return type == NodeType::Type1 ? alpha1 : alpha2;
  }
  Allocation swapped() const { return {alpha2, alpha1}; }

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

Allocation operator+(const Allocation& a, const Allocation& b);
Allocation operator*(const Ratio& scale, const Allocation& a);

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::string message() const;
};

ValidationReport validate(const SystemParams& params);

/// Throws std::invalid_argument carrying the report message unless valid.
void require_valid(const SystemParams& params);

/// C1*n1*alpha1 + C2*n2*alpha2.
Ratio storage_cost(const SystemParams& params, const Allocation& alloc);

}  // namespace regenalloc
