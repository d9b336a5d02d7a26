#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rswan/logdiff.hpp"
#include "rswan/witt.hpp"

namespace rswan {

/// Embedding K -> L given by the images of the K-variables.
struct ExtensionMap {
  RingPtr source;
  RingPtr target;
  std::vector<Series> images;  // images[l] is the image of T_{l+1} of K

  /// Checks shapes and that the uniformizer goes to ord >= 1; NonEmbedding.
  void validate() const;
};

/// Identity extension of a ring.
ExtensionMap identity_extension(const RingPtr& ring);

/// ord_L of the image of the K-uniformizer.
std::int64_t ramification_index(const ExtensionMap& phi);

/// Componentwise substitution followed by reduction.
Character pullback_character(const Character& chi, const ExtensionMap& phi);

struct TorsionReport {
  std::int64_t delta = 0;
  /// Coefficients of dlog(image of pi_K) in the basis db_1, ..., db_{d-1},
  /// dlog pi_L of L.
  std::vector<Series> relation;
  std::vector<std::int64_t> relation_ords;  // -1 for a zero coefficient
};
TorsionReport delta_tor(const ExtensionMap& phi);

enum class Status { Pass, Fail, NotApplicable };
std::string to_string(Status s);

struct ConductorChangeReport {
  std::int64_t e = 0;
  std::int64_t delta = 0;
  std::int64_t sw_k = 0;
  bool hypothesis = false;
  std::int64_t predicted = 0;
  std::int64_t direct = 0;
  Status status = Status::NotApplicable;
};
/// Sw(chi_L) = e Sw(chi) - delta when Sw(chi) (p-1) e > p delta. The input
/// character is reduced first.
ConductorChangeReport conductor_change(const Character& chi, const ExtensionMap& phi);

/// Exact nonnegative fraction num/den in lowest terms.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;
  static Ratio of(std::int64_t num, std::int64_t den);
  bool operator==(const Ratio& o) const { return num == o.num && den == o.den; }
  bool operator<=(const Ratio& o) const { return num * o.den <= o.num * den; }
  bool operator<(const Ratio& o) const { return num * o.den < o.num * den; }
  std::string to_string() const;
};

struct RatioRow {
  std::int64_t e = 0;
  std::int64_t sw = 0;
  Ratio ratio;
  bool expected_known = false;
  Ratio expected;
};

struct ThmBReport {
  std::int64_t n = 0;
  bool c_unit = false;
  bool residual_unit = false;
  std::vector<RatioRow> rows;
  Ratio max_ratio;
  bool all_bounded = false;
  bool all_expected = false;
  Status status = Status::Fail;
};

/// Maps u -> v^p + w, t -> w^tau from K = F_q((u))((t)) to F_q((v))((w)),
/// one per tau.
std::vector<ExtensionMap> thmB_family(const RingPtr& K, const std::vector<std::int64_t>& taus,
                                      const std::vector<std::string>& target_variables = {"v", "w"});

/// Sw(chi_L)/e(L/K) for every member; each must be <= Sw(chi). With
/// `canned_family` the members are thmB_family maps and, when the Rsw
/// decomposition has c non-unit and a unit residual coefficient, the ratio
/// must equal Sw(chi) - 1/e.
ThmBReport thmB_ratio_experiment(const Character& chi, const std::vector<ExtensionMap>& family, bool canned_family);

struct CurveReport {
  std::int64_t sw_d = 0;
  std::vector<RatioRow> rows;
  bool all_bounded = false;
  /// Every ratio has the form Sw_D - a/e with one a > 0 and they increase with e.
  bool approaches = false;
  Status status = Status::Fail;
};

/// f over F_p((x))((t)), s = 1. Curve C_e: x -> x0 + u, t -> u^e.
CurveReport curve_ratio_experiment(const Series& f, std::int64_t x0, const std::vector<std::int64_t>& e_list,
                                   const std::string& curve_variable = "u");

}  // namespace rswan
