#include "rswan/extensions.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "rswan/error.hpp"
#include "rswan/parallel.hpp"
#include "rswan/rsw.hpp"

namespace rswan {

namespace {

Series at_top(const Series& x, const RingPtr& ring) {
  return x.level() == ring->dimension() ? x : x.promoted(ring->dimension());
}

}  // namespace

void ExtensionMap::validate() const {
  if (!source || !target) throw NonEmbedding("extension without rings");
  const FieldTower& K = source->tower();
  const FieldTower& L = target->tower();
  if (K.p != L.p || K.k != L.k || K.s != L.s)
    throw TowerMismatch("extension between towers with different p, k or s");
  if (static_cast<int>(images.size()) != source->dimension())
    throw NonEmbedding("extension needs one image per variable of K");
  for (std::size_t l = 0; l < images.size(); ++l) {
    const Series& y = images[l];
    if (!y.valid() || !y.ring()->same_as(*target)) throw TowerMismatch("image is not an element of L");
    if (y.is_exact_zero()) throw NonEmbedding("variable " + K.variables[l] + " maps to zero");
    const std::int64_t v = at_top(y, target).ord();
    if (l + 1 == images.size()) {
      if (v < 1) throw NonEmbedding("uniformizer must map into the maximal ideal");
    } else if (v != 0) {
      throw NonEmbedding("residue variable " + K.variables[l] + " must map to a unit");
    }
  }
}

ExtensionMap identity_extension(const RingPtr& ring) {
  ExtensionMap phi{ring, ring, {}};
  for (int l = 0; l < ring->dimension(); ++l) phi.images.push_back(Series::variable(ring, l));
  return phi;
}

std::int64_t ramification_index(const ExtensionMap& phi) {
  phi.validate();
  return at_top(phi.images.back(), phi.target).ord();
}

Character pullback_character(const Character& chi, const ExtensionMap& phi) {
  phi.validate();
  if (!chi.rep.ring()->same_as(*phi.source)) throw TowerMismatch("character is not over the source of the extension");
  std::vector<Series> images;
  for (const auto& y : phi.images) images.push_back(at_top(y, phi.target));
  std::vector<Series> comps;
  for (const auto& c : chi.rep.components()) comps.push_back(c.substitute(images));
  return asw_reduce(WittVector(phi.target, std::move(comps)));
}

TorsionReport delta_tor(const ExtensionMap& phi) {
  if (phi.source->dimension() != 1) throw NonPerfectBase("delta_tor needs K with perfect residue field (one variable)");
  phi.validate();
  const int dL = phi.target->dimension();
  if (dL > 2) throw Unsupported("delta_tor supports L with at most two variables");
  const LogForm w = dlog(at_top(phi.images.back(), phi.target));
  TorsionReport rep;
  for (int l = 0; l < dL; ++l) {
    Series c = w.coefficient(LogForm::key_of({l}));
    if (l + 1 < dL) c = c * Series::variable(phi.target, l).inverse();  // dlog T_l = T_l^{-1} db_l
    rep.relation.push_back(c);
  }
  std::optional<std::int64_t> best;
  for (const auto& c : rep.relation) {
    if (c.is_zero()) {
      rep.relation_ords.push_back(-1);
      continue;
    }
    const std::int64_t v = c.ord();
    rep.relation_ords.push_back(v);
    best = best ? std::min(*best, v) : v;
  }
  if (!best) throw Unsupported("dlog of the uniformizer vanishes: the torsion length is infinite");
  for (const auto& c : rep.relation)
    if (c.is_zero() && !c.is_exact() && c.ord_bound() < *best)
      throw PrecisionExhausted("a relation coefficient is undetermined below the torsion length");
  rep.delta = *best;
  return rep;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::NotApplicable:
      return "NOT_APPLICABLE";
  }
  return "FAIL";
}

ConductorChangeReport conductor_change(const Character& chi, const ExtensionMap& phi) {
  const Character reduced = chi.reduced ? chi : asw_reduce(chi.rep);
  ConductorChangeReport rep;
  rep.sw_k = swan_conductor(reduced);
  rep.e = ramification_index(phi);
  rep.delta = delta_tor(phi).delta;
  const std::int64_t p = phi.source->prime();
  rep.hypothesis = rep.sw_k * (p - 1) * rep.e > p * rep.delta;
  rep.predicted = rep.e * rep.sw_k - rep.delta;
  rep.direct = swan_conductor(pullback_character(reduced, phi));
  if (!rep.hypothesis)
    rep.status = Status::NotApplicable;
  else
    rep.status = rep.predicted == rep.direct ? Status::Pass : Status::Fail;
  return rep;
}

Ratio Ratio::of(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ZeroInput("ratio with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g ? Ratio{num / g, den / g} : Ratio{0, 1};
}

std::string Ratio::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::vector<ExtensionMap> thmB_family(const RingPtr& K, const std::vector<std::int64_t>& taus,
                                      const std::vector<std::string>& target_variables) {
  if (K->dimension() != 2) throw Unsupported("the canned family needs K = F_q((u))((t))");
  if (target_variables.size() != 2) throw ConfigError("the canned family needs two target variables");
  FieldTower lt = K->tower();
  lt.variables = target_variables;
  const RingPtr L = Ring::field(lt);
  const std::int64_t p = K->prime();
  const Series v = Series::variable(L, 0);
  const Series w = Series::variable(L, 1);
  std::vector<ExtensionMap> out;
  for (std::int64_t tau : taus) {
    if (tau < 1) throw ConfigError("family exponents must be positive");
    out.push_back(ExtensionMap{K, L, {v.pow(p) + w, w.pow(tau)}});
  }
  return out;
}

ThmBReport thmB_ratio_experiment(const Character& chi, const std::vector<ExtensionMap>& family, bool canned_family) {
  const Character reduced = chi.reduced ? chi : asw_reduce(chi.rep);
  ThmBReport rep;
  rep.n = swan_conductor(reduced);
  const RswDecomposition dec = rsw_decompose(rsw_char_p(reduced));
  rep.c_unit = dec.c_unit;
  rep.residual_unit = std::any_of(dec.residual_unit.begin(), dec.residual_unit.end(), [](bool b) { return b; });
  const bool expect = canned_family && !rep.c_unit && rep.residual_unit;
  rep.rows.resize(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    RatioRow& row = rep.rows[i];
    row.e = ramification_index(family[i]);
    row.sw = swan_conductor(pullback_character(reduced, family[i]));
    row.ratio = Ratio::of(row.sw, row.e);
    if (expect) {
      row.expected_known = true;
      row.expected = Ratio::of(rep.n * row.e - 1, row.e);
    }
  });
  const Ratio bound = Ratio::of(rep.n, 1);
  rep.all_bounded = true;
  rep.all_expected = true;
  for (const auto& row : rep.rows) {
    if (rep.max_ratio < row.ratio) rep.max_ratio = row.ratio;
    rep.all_bounded = rep.all_bounded && row.ratio <= bound;
    if (row.expected_known) rep.all_expected = rep.all_expected && row.ratio == row.expected;
  }
  rep.status = rep.all_bounded && rep.all_expected ? Status::Pass : Status::Fail;
  return rep;
}

CurveReport curve_ratio_experiment(const Series& f, std::int64_t x0, const std::vector<std::int64_t>& e_list,
                                   const std::string& curve_variable) {
  const RingPtr& X = f.ring();
  if (X->dimension() != 2) throw Unsupported("curve experiment needs a surface tower F_p((x))((t))");
  if (X->tower().s != 1) throw Unsupported("curve experiment needs s = 1");
  CurveReport rep;
  rep.sw_d = swan_conductor(WittVector(X, {at_top(f, X)}));
  FieldTower ct = X->tower();
  ct.variables = {curve_variable};
  const RingPtr C = Ring::field(ct);
  const Series u = Series::variable(C, 0);
  const Series x_image = Series::from_int(C, x0, 1) + u;
  rep.rows.resize(e_list.size());
  parallel_for(e_list.size(), [&](std::size_t i) {
    const std::int64_t e = e_list[i];
    if (e < 1) throw ConfigError("curve exponents must be positive");
    // x -> x0 + u need not be a unit, so this is a plain substitution of
    // polynomial data rather than a valued embedding.
    const Series restricted = at_top(f, X).substitute({x_image, u.pow(e)});
    RatioRow& row = rep.rows[i];
    row.e = e;
    row.sw = swan_conductor(WittVector(C, {restricted}));
    row.ratio = Ratio::of(row.sw, e);
  });
  const Ratio bound = Ratio::of(rep.sw_d, 1);
  rep.all_bounded = true;
  for (const auto& row : rep.rows) rep.all_bounded = rep.all_bounded && row.ratio <= bound;
  rep.approaches = rep.sw_d > 0 && !rep.rows.empty();
  std::optional<std::int64_t> gap;
  for (std::size_t i = 0; i < rep.rows.size() && rep.approaches; ++i) {
    const auto& row = rep.rows[i];
    const std::int64_t a = rep.sw_d * row.e - row.sw;
    if (a <= 0 || (gap && *gap != a)) rep.approaches = false;
    gap = a;
    if (i > 0 && row.ratio < rep.rows[i - 1].ratio) rep.approaches = false;
  }
  rep.status = rep.all_bounded ? Status::Pass : Status::Fail;
  return rep;
}

}  // namespace rswan
