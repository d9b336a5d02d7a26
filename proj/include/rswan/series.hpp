#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rswan/scalar.hpp"
#include "rswan/tower.hpp"

namespace rswan {

/// One monomial of a nested series: exps[i] is the exponent of T_{i+1}.
struct Term {
  std::vector<std::int64_t> exps;
  Scalar coeff;
};

/// Element of F_q((T_1))...((T_L)) (or the lift ring over GR(p^s, k)) for a
/// level L between 0 and the tower dimension. A level-L series stores a dense
/// run of coefficients, each a level-(L-1) series, starting at `lowest()`.
/// Exponents at or above `ceiling()` are unknown; exact Laurent polynomials
/// carry the ceiling `kExact`. Inner coefficients keep their own ceilings, so
/// a stored coefficient may be "known zero up to its inner precision".
class Series {
 public:
  static constexpr std::int64_t kExact = INT64_MAX / 4;
  static constexpr std::int64_t kMinOrd = -10000;

  Series() = default;

  static Series zero(RingPtr ring, int level);
  static Series zero(RingPtr ring) { const int d = ring->dimension(); return zero(std::move(ring), d); }
  static Series constant(RingPtr ring, const Scalar& c, int level);
  static Series from_int(RingPtr ring, std::int64_t v, int level);
  static Series one(RingPtr ring, int level) { return from_int(std::move(ring), 1, level); }
  /// T_{index+1} viewed at `level` (index < level).
  static Series variable(RingPtr ring, int index, int level);
  static Series variable(RingPtr ring, int index) { const int d = ring->dimension(); return variable(std::move(ring), index, d); }
  static Series monomial(RingPtr ring, const Scalar& c, const std::vector<std::int64_t>& exps);
  /// Exact Laurent polynomial with the given terms; rejects ord below kMinOrd.
  static Series from_terms(RingPtr ring, int level, const std::vector<Term>& terms);

  const RingPtr& ring() const { return ring_; }
  int level() const { return level_; }
  bool valid() const { return ring_ != nullptr; }

  /// Every coefficient and every inner coefficient is exactly known.
  bool is_exact() const { return exact_; }
  /// No known nonzero term (the value may still be an unknown small element).
  bool is_zero() const;
  bool is_exact_zero() const { return exact_ && is_zero(); }
  bool is_one() const;

  /// Valuation in T_level. Throws ZeroInput on the exact zero and
  /// PrecisionExhausted when the leading coefficient is not determined.
  std::int64_t ord() const;
  /// Lower bound for the valuation in T_level.
  std::int64_t ord_bound() const;
  std::int64_t lowest() const { return lowest_; }
  std::int64_t ceiling() const { return ceiling_; }
  /// Number of stored coefficient slots (level >= 1).
  std::size_t slots() const { return level_ == 1 ? sc_.size() : kids_.size(); }

  /// Coefficient of T_level^j as a level-(L-1) series.
  Series coeff(std::int64_t j) const;
  /// Scalar of a level-0 series.
  const Scalar& scalar() const { return scalar_; }
  /// Coefficient of T_1^j of a level-1 series.
  Scalar scalar_coeff(std::int64_t j) const;
  /// Leading coefficient (coefficient at ord()).
  Series leading() const { return coeff(ord()); }

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series scaled(const Scalar& c) const;
  Series times_int(std::int64_t v) const;
  Series inverse() const;
  Series pow(std::int64_t n) const;
  /// Multiplication by T_level^k.
  Series shifted(std::int64_t k) const;
  /// Forget coefficients of T_level^j for j >= c.
  Series truncated(std::int64_t c) const;
  /// Keep only exponents of T_level in [lo, hi).
  Series window(std::int64_t lo, std::int64_t hi) const;
  /// Embed as a constant coefficient series at a higher level.
  Series promoted(int level) const;

  /// x -> x^p (char p only).
  Series frobenius() const;
  /// Sum of the terms whose exponents are all divisible by p.
  Series pth_power_part() const;
  bool is_pth_power() const;
  /// Inverse of frobenius; throws NoPthRoot.
  Series pth_root() const;
  /// Keeps terms with all exponents divisible by p and takes their p-th root.
  Series cartier() const;
  /// T_{var+1} d/dT_{var+1}.
  Series log_derivative(int var) const;

  /// Reduction mod p (lift ring -> field) and the coefficientwise lift.
  Series reduced() const;
  Series lifted() const;
  /// Same value viewed in a structurally identical ring (e.g. other precision).
  Series rebased(RingPtr ring) const;

  /// Ring homomorphism T_{l+1} -> images[l] into the ring of the images.
  Series substitute(const std::vector<Series>& images) const;

  /// Visits every known nonzero term; exps[i] is the exponent of T_{i+1}.
  void for_each_term(const std::function<void(const std::vector<std::int64_t>&, const Scalar&)>& fn) const;
  std::vector<Term> terms() const;
  std::size_t term_count() const;

  /// Identical stored data, including precision.
  bool identical(const Series& o) const;
  /// The two values agree on every coefficient known for both.
  bool congruent(const Series& o) const;

  std::string to_string() const;

  // Kernel entry points, exposed for tests and benchmarks.
  friend Series multiply_serial(const Series& a, const Series& b);
  friend Series multiply_parallel(const Series& a, const Series& b);

 private:
  struct Plan {
    std::int64_t lowest;
    std::int64_t ceiling;
    std::int64_t count;
    bool empty;
  };
  static Plan plan_product(const Series& a, const Series& b);
  static void product_slot(const Series& a, const Series& b, std::int64_t k, Series& out_kid, Scalar& out_scalar);
  void check_compatible(const Series& o) const;
  void normalize();
  void apply_budget();
  Series empty_like(std::int64_t ceiling) const;
  void for_each_term_rec(std::vector<std::int64_t>& exps,
                         const std::function<void(const std::vector<std::int64_t>&, const Scalar&)>& fn) const;
  Series map_scalars(RingPtr target, const std::function<Scalar(const Scalar&)>& f) const;
  Series root_impl(bool strict) const;

  RingPtr ring_;
  int level_ = 0;
  bool exact_ = true;
  bool nz_ = false;
  Scalar scalar_{};
  std::int64_t lowest_ = 0;
  std::int64_t ceiling_ = kExact;
  std::vector<Scalar> sc_;
  std::vector<Series> kids_;
};

Series multiply_serial(const Series& a, const Series& b);
Series multiply_parallel(const Series& a, const Series& b);

/// Saturating arithmetic against Series::kExact.
std::int64_t sat_add(std::int64_t a, std::int64_t b);
std::int64_t sat_mul(std::int64_t a, std::int64_t b);

}  // namespace rswan
