#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rswan/series.hpp"

namespace rswan {

/// Witt vector of length s over the field K of a ring. Components are stored
/// as [a_0, ..., a_{s-1}] where a_i carries weight p^i in the Brylinski
/// filtration. The printed tuple (a_{s-1}, ..., a_0) is the usual Witt order
/// x_0, ..., x_{s-1} (x_0 = a_{s-1} is the component the ghost map raises to
/// the highest power).
class WittVector {
 public:
  WittVector() = default;
  WittVector(RingPtr ring, std::vector<Series> internal);

  static WittVector zero(const RingPtr& ring);
  /// From (a_{s-1}, ..., a_0).
  static WittVector from_print_order(const RingPtr& ring, std::vector<Series> printed);

  const RingPtr& ring() const { return ring_; }
  int length() const { return static_cast<int>(a_.size()); }
  /// Internal component a_i.
  const Series& component(int i) const { return a_[static_cast<std::size_t>(i)]; }
  const std::vector<Series>& components() const { return a_; }
  /// (a_{s-1}, ..., a_0), which is also the standard Witt order.
  std::vector<Series> print_order() const;

  bool is_zero() const;
  bool congruent(const WittVector& o) const;

 private:
  RingPtr ring_;
  std::vector<Series> a_;
};

/// A class in W_s(K)/(F-1)W_s(K) together with its representative.
struct Character {
  WittVector rep;
  bool reduced = false;
};

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
WittVector witt_sub(const WittVector& a, const WittVector& b);
WittVector witt_frobenius(const WittVector& a);
/// Verschiebung applied `times` times.
WittVector witt_verschiebung(const WittVector& a, int times = 1);
WittVector witt_teichmuller(const Series& x);

/// min_i p^i ord(a_i) over nonzero components; ZeroInput on the zero vector.
std::int64_t witt_ord(const WittVector& a);

/// Greedy top-down reduction to a representative of maximal witt_ord.
Character asw_reduce(const WittVector& a);
/// Sw of a reduced character; NotReduced otherwise.
std::int64_t swan_conductor(const Character& chi);
/// Convenience: swan_conductor(asw_reduce(a)).
std::int64_t swan_conductor(const WittVector& a);

/// Components rendered in print order.
std::vector<std::string> render_witt(const WittVector& a);

}  // namespace rswan
