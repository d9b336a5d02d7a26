#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rswan {

/// Element of GR(p^e, k) = (Z/p^e)[g]/(f(g)), stored as the coefficients of
/// 1, g, ..., g^{k-1} reduced into [0, p^e). With e = 1 this is F_q, q = p^k.
struct Scalar {
  std::array<std::int32_t, 4> c{};
  bool operator==(const Scalar&) const = default;
};

/// Monic defining polynomial of F_{p^k} (low degree first, length k + 1).
/// Fixed Conway-polynomial table for p in {2, 3, 5} and k <= 4.
std::vector<int> conway_polynomial(int p, int k);

/// Arithmetic in the Galois ring GR(p^e, k). The defining polynomial is the
/// F_{p^k} Conway polynomial read over Z/p^e, so reduction mod p commutes
/// with every operation.
class ScalarRing {
 public:
  static constexpr int kMaxDegree = 4;

  ScalarRing(int p, int k, int e);

  int prime() const { return p_; }
  int degree() const { return k_; }
  int exponent() const { return e_; }
  std::int64_t modulus() const { return modulus_; }
  /// Number of elements of the residue field F_q.
  std::int64_t residue_size() const { return q_; }
  const std::vector<int>& defining_polynomial() const { return poly_; }

  Scalar zero() const { return {}; }
  Scalar one() const { return from_int(1); }
  Scalar from_int(std::int64_t v) const;
  /// Root g of the defining polynomial.
  Scalar generator() const;
  /// Scalar whose coefficient vector is `coeffs` (reduced).
  Scalar from_coefficients(const std::vector<std::int64_t>& coeffs) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar mul_int(const Scalar& a, std::int64_t v) const;
  Scalar pow(Scalar a, std::uint64_t n) const;
  /// Throws ZeroInput when `a` is not a unit.
  Scalar inv(const Scalar& a) const;

  bool is_zero(const Scalar& a) const { return a == Scalar{}; }
  bool is_one(const Scalar& a) const { return a == one(); }
  /// Units are exactly the elements that are nonzero mod p.
  bool is_unit(const Scalar& a) const;

  /// x -> x^p. Only meaningful for e = 1.
  Scalar frobenius(const Scalar& a) const;
  /// Inverse of the Frobenius on F_q (x -> x^{q/p}). Only for e = 1.
  Scalar pth_root(const Scalar& a) const;

  /// Trace of GR(p^e, k) over Z/p^e, returned in [0, p^e).
  std::int64_t trace(const Scalar& a) const;

  /// Reduce coefficients mod p (the image in F_q).
  Scalar reduce_mod_p(const Scalar& a) const;

  /// Canonical integer encoding, used for hashing and ordering.
  std::int64_t encode(const Scalar& a) const;
  Scalar decode(std::int64_t code) const;

  bool operator==(const ScalarRing& o) const {
    return p_ == o.p_ && k_ == o.k_ && e_ == o.e_;
  }

 private:
  std::int64_t reduce(std::int64_t v) const {
    v %= modulus_;
    return v < 0 ? v + modulus_ : v;
  }

  int p_;
  int k_;
  int e_;
  std::int64_t modulus_;
  std::int64_t q_;
  std::vector<int> poly_;
};

}  // namespace rswan
