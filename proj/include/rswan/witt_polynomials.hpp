#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "rswan/series.hpp"

namespace rswan {

/// Polynomial with coefficients in Z/M in at most 8 variables.
struct IntPoly {
  using Exponents = std::array<std::uint16_t, 8>;
  std::map<Exponents, std::int64_t> terms;

  static IntPoly variable(int index);
  static IntPoly constant(std::int64_t c);
  IntPoly add(const IntPoly& o, std::int64_t modulus) const;
  IntPoly scale(std::int64_t c, std::int64_t modulus) const;
  IntPoly mul(const IntPoly& o, std::int64_t modulus) const;
  IntPoly pow(std::uint64_t n, std::int64_t modulus) const;
};

/// Universal Witt polynomials for length s over F_p, in standard Witt order
/// (component j has ghost weight p^j in w_n = sum_j p^j x_j^{p^{n-j}}).
/// Sum polynomials use variables X_0..X_{s-1} (indices 0..s-1) and
/// Y_0..Y_{s-1} (indices s..2s-1); negation polynomials use X only.
class WittPolynomials {
 public:
  /// Computed on first use and cached for the life of the process.
  static const WittPolynomials& get(int p, int s);

  int prime() const { return p_; }
  int length() const { return s_; }
  const std::vector<IntPoly>& sum() const { return sum_; }
  const std::vector<IntPoly>& negation() const { return neg_; }

  WittPolynomials(int p, int s);

 private:
  int p_;
  int s_;
  std::vector<IntPoly> sum_;
  std::vector<IntPoly> neg_;
};

/// Evaluates a mod-p polynomial at series values (vars[i] for variable i).
Series evaluate(const IntPoly& poly, const std::vector<Series>& vars);

}  // namespace rswan
