#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rswan/scalar.hpp"

namespace rswan {

/// Descriptor of F_q((T_1))...((T_d)) with q = p^k, together with the Witt
/// length s used by characters over it and the per-variable precision budget.
/// `variables[0]` is T_1 (innermost); the last entry is the uniformizer.
struct FieldTower {
  int p = 2;
  int k = 1;
  int s = 1;
  std::vector<std::string> variables{"t"};
  int precision = 64;

  int dimension() const { return static_cast<int>(variables.size()); }
  /// Throws ConfigError on an invalid descriptor.
  void validate() const;
  /// 0-based index of `name`; throws UnknownVariable.
  int variable_index(const std::string& name) const;

  bool operator==(const FieldTower& o) const = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Coefficient context of a series: the tower plus the scalar ring, which is
/// F_q for the field K and GR(p^s, k) for the lift ring P.
class Ring {
 public:
  static RingPtr field(const FieldTower& tower);
  static RingPtr lift(const FieldTower& tower);

  const FieldTower& tower() const { return tower_; }
  const ScalarRing& scalars() const { return scalars_; }
  int dimension() const { return tower_.dimension(); }
  int precision() const { return tower_.precision; }
  int prime() const { return tower_.p; }
  bool is_field() const { return scalars_.exponent() == 1; }

  RingPtr as_field() const { return field(tower_); }
  RingPtr as_lift() const { return lift(tower_); }
  RingPtr with_precision(int precision) const;

  /// Structural identity: same prime, degree, scalar exponent and variables.
  /// Precision budgets may differ.
  bool same_as(const Ring& other) const;

 private:
  Ring(FieldTower tower, int exponent);
  FieldTower tower_;
  ScalarRing scalars_;
};

}  // namespace rswan
