#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rswan/series.hpp"

namespace rswan {

/// Degree-r logarithmic differential form over the level-`nvars` field of a
/// ring: sum over r-subsets S of c_S * dlog T_{i1} ^ ... ^ dlog T_{ir}, with S
/// encoded as a bitmask (bit l stands for T_{l+1}) and indices increasing.
class LogForm {
 public:
  using Key = std::uint32_t;

  LogForm() = default;
  LogForm(RingPtr ring, int nvars, int degree);

  static LogForm function(const Series& f);
  /// coeff * dlog T_{i1} ^ ... (indices 0-based, any order; sign applied).
  static LogForm basis(const Series& coeff, const std::vector<int>& indices);
  static Key key_of(const std::vector<int>& sorted_indices);
  static std::vector<int> indices_of(Key key);
  static Key top_key(int nvars) { return nvars == 0 ? 0u : ((1u << nvars) - 1u); }

  const RingPtr& ring() const { return ring_; }
  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_top() const { return degree_ == nvars_; }
  const std::map<Key, Series>& coefficients() const { return coeffs_; }
  /// Coefficient of the basis element `key` (zero when absent).
  Series coefficient(Key key) const;
  /// Adds c to the coefficient of `key`.
  void accumulate(Key key, const Series& c);

  LogForm operator+(const LogForm& o) const;
  LogForm operator-(const LogForm& o) const;
  LogForm operator-() const;
  /// Multiplies every coefficient by f.
  LogForm operator*(const Series& f) const;

  bool is_zero() const;
  /// Applies Series::truncated / Series::window to every coefficient.
  LogForm truncated(std::int64_t ceiling) const;
  LogForm window(std::int64_t lo, std::int64_t hi) const;
  /// Smallest valuation in the outermost variable over all coefficients.
  std::int64_t ord() const;
  bool congruent(const LogForm& o) const;
  LogForm reduced() const;
  LogForm lifted() const;

  /// Sorted basis keys in canonical order (lexicographic index lists).
  std::vector<Key> canonical_keys() const;

 private:
  void check_compatible(const LogForm& o) const;
  RingPtr ring_;
  int nvars_ = 0;
  int degree_ = 0;
  std::map<Key, Series> coeffs_;
};

/// Class in m^{-n}/m^{-m} (x) Omega^r(log): a representative plus its window.
struct WindowedForm {
  LogForm form;
  std::int64_t n = 0;
  std::int64_t m = 0;

  /// Representative with every term of outer exponent >= -m removed.
  WindowedForm canonical() const;
  bool congruent(const WindowedForm& o) const;
};

/// Exterior derivative; f dlog_S -> sum_l (T_l d/dT_l f) dlog T_l ^ dlog_S.
LogForm d(const LogForm& w);
LogForm d(const Series& f);
LogForm wedge(const LogForm& a, const LogForm& b);
/// dlog y = y^{-1} dy.
LogForm dlog(const Series& y);

/// Cartier operator on a top-degree form.
LogForm cartier(const LogForm& w);
/// Coefficient of T_nvars^0 dlog T_nvars of a top form, as a top form over
/// the next field down.
LogForm residue_step(const LogForm& w);
/// Iterated residue followed by the trace to Z/p^e (e = 1 for the field).
std::int64_t residue_to_base(const LogForm& w);
/// Same as residue_to_base for forms over the field; result in Z/p.
std::int64_t residue_to_prime_field(const LogForm& w);

/// R_b of a top form class x in m^{1-a}/m (x) Omega^{r+1}(log), given with
/// window (n, m), m <= -1 and a = n + 1. Returns C^b of the constant
/// residue slot.
LogForm r_b(const WindowedForm& x, int b);

/// One basis vector of the pairing spaces: coeff u^c T^k dlog_S.
struct PairingBasisElement {
  std::vector<std::int64_t> exps;
  LogForm::Key key = 0;
};

struct DualityMatrix {
  std::vector<PairingBasisElement> left;   // basis of m^{-n}/m^{-m} (x) Omega^j
  std::vector<PairingBasisElement> right;  // basis of m^{m+1}/m^{n+1} (x) Omega^i
  std::vector<std::vector<Series>> entries;  // entries[a][b] = R_b(left_a ^ right_b) in F
  int b = 0;
};

/// Gram matrix of (x, y) -> R_b(x ^ y) on bases twisted by c -> c^{p^b}.
DualityMatrix duality_matrix(std::int64_t n, std::int64_t m, int b, const RingPtr& K, int i, int j);

/// Rank by exact Gaussian elimination over the field of the entries.
std::size_t matrix_rank(std::vector<std::vector<Series>> rows);
bool is_invertible(const std::vector<std::vector<Series>>& rows);

/// Pullback of a form along T_l -> images[l].
LogForm pullback_form(const LogForm& w, const std::vector<Series>& images);

/// Canonical text "c*mono dlog(a)^dlog(b) + ... | window(n,m)".
std::string render_form(const WindowedForm& w);
std::string render_logform(const LogForm& w);
WindowedForm parse_form(const std::string& text, const RingPtr& ring);

}  // namespace rswan
