#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rswan/logdiff.hpp"
#include "rswan/witt.hpp"

namespace rswan {

/// E(x) = sum_{i<p} x^i / i! with the factorials inverted in the coefficient
/// ring (F_q or GR(p^s, k)). Requires x in the maximal ideal.
Series truncated_exp(const Series& x);

/// Exact rational check of the three congruences satisfied by E(T).
struct ExpCongruenceReport {
  int p = 0;
  int degree_bound = 0;
  /// [0] E(T1+T2) = E(T1)E(T2) mod (T1,T2)^p
  /// [1] E(T) = prod_{i<p, (i,p)=1} (1 - T^i)^{-mu(i)/i} mod T^p
  /// [2] T E'(T)/E(T) = T mod T^p
  std::array<bool, 3> pass{};
  std::array<std::string, 3> detail;
  /// Whether T E'/E = 1 mod T^p holds literally (it never does).
  bool literal_unit_form = false;
  /// The product over all i <= degree_bound prime to p has p-integral
  /// coefficients up to degree_bound.
  bool product_p_integral = false;
};
ExpCongruenceReport check_exp_congruences(int p, int degree_bound);

/// sum_i p^{s-1-i} lift(a_i)^{p^i} in the lift ring.
Series theta_lift(const WittVector& a);

/// Iterated residue and trace to Z/p^s of a top form over the lift ring.
std::int64_t res_p(const LogForm& w);

/// chi({y_1, ..., y_d}) = Res_P(theta(f) dlog y~_1 ^ ... ^ dlog y~_d) in Z/p^s.
std::int64_t eval_symbol(const Character& chi, const std::vector<Series>& ys);

/// One sampled alpha and both sides of chi(E(alpha)) = Res_F(R_b(alpha ^ Rsw)).
struct CharacterizationSample {
  std::string alpha;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  /// Res_K(f dlog E(alpha)) traced to F_p; only for s = 1, d = 1.
  std::optional<std::int64_t> schmid;
  bool equal() const { return lhs == rhs && (!schmid || *schmid == lhs); }
};

struct CharacterizationReport {
  std::int64_t n = 0;
  std::int64_t m = 0;
  int b = 0;
  std::vector<CharacterizationSample> samples;
  bool all_equal() const;
};

/// alpha is drawn from m^{m+1}/m^{n+1} (x) Omega^{d-1}(log) using a
/// per-sample generator derived from `seed`.
CharacterizationReport verify_rsw_characterization(const Character& chi, int samples, std::uint64_t seed);

/// Per-sample seed: splitmix64 of seed + index.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace rswan
