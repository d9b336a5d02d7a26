#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rswan/error.hpp"
#include "rswan/extensions.hpp"
#include "rswan/rsw.hpp"
#include "support.hpp"

using namespace rswan;
using testing::S;
using testing::W;
using testing::field;

namespace {

std::int64_t pulled_sw_oracle(const Series& f, const Series& y) {
  return oracle::pulled_sw(oracle::to_oracle(f), oracle::to_oracle(y));
}

}  // namespace

TEST_CASE("embeddings and ramification") {
  const RingPtr K = field(2, {"u", "t"});
  const RingPtr L = field(2, {"v", "w"});
  CHECK(ramification_index(ExtensionMap{K, L, {S(L, "v"), S(L, "w^5")}}) == 5);
  CHECK(ramification_index(identity_extension(K)) == 1);
  CHECK_THROWS_AS(ExtensionMap({K, L, {S(L, "v"), S(L, "1 + w")}}).validate(), NonEmbedding);
  CHECK_THROWS_AS(ExtensionMap({K, L, {S(L, "w"), S(L, "w")}}).validate(), NonEmbedding);
  CHECK_THROWS_AS(ExtensionMap({K, L, {S(L, "v")}}).validate(), NonEmbedding);
  const RingPtr L3 = field(3, {"v", "w"});
  CHECK_THROWS_AS(ExtensionMap({K, L3, {S(L3, "v"), S(L3, "w")}}).validate(), TowerMismatch);
}

TEST_CASE("pullback") {
  const RingPtr K = field(2);
  const RingPtr L = field(2, {"u"});
  const ExtensionMap wild{K, L, {S(L, "u^2 + u^3")}};
  const Character chi = asw_reduce(W(K, {"t^-3"}));
  CHECK(swan_conductor(pullback_character(chi, wild)) == 5);
  CHECK(pulled_sw_oracle(S(K, "t^-3"), S(L, "u^2 + u^3")) == 5);

  CHECK(pullback_character(chi, identity_extension(K)).rep.congruent(chi.rep));

  const Character c1 = pullback_character(asw_reduce(W(K, {"t^-1"})), ExtensionMap{K, L, {S(L, "u^2")}});
  CHECK(swan_conductor(c1) == 1);
  CHECK(c1.rep.component(0).identical(S(L, "u^-1")));
  CHECK(pulled_sw_oracle(S(K, "t^-1"), S(L, "u^2")) == 1);
}

TEST_CASE("upper bound and oracle agreement on random data") {
  std::mt19937_64 rng(61);
  for (int p : {2, 3}) {
    const RingPtr K = field(p);
    const RingPtr L = field(p, {"u"});
    for (int trial = 0; trial < 20; ++trial) {
      const std::int64_t e = 1 + static_cast<std::int64_t>(rng() % 4);
      const Series y = S(L, "u").pow(e) * (Series::one(L, 1) + testing::random_poly(L, rng, 1, 3));
      const ExtensionMap phi{K, L, {y}};
      const Series f = testing::random_poly(K, rng, -6, 0);
      const Character chi = asw_reduce(WittVector(K, {f}));
      const std::int64_t got = swan_conductor(pullback_character(chi, phi));
      CHECK(got <= e * swan_conductor(chi));
      CHECK(got == pulled_sw_oracle(f, y));
    }
    const RingPtr K2 = field(p, {"t"}, 2);
    const RingPtr L2 = field(p, {"u"}, 2);
    for (int trial = 0; trial < 6; ++trial) {
      const std::int64_t e = 1 + static_cast<std::int64_t>(rng() % 3);
      const ExtensionMap phi{K2, L2, {S(L2, "u").pow(e) * (Series::one(L2, 1) + testing::random_poly(L2, rng, 1, 2))}};
      const Character chi = asw_reduce(testing::random_witt(K2, rng, -3, 0));
      CHECK(swan_conductor(pullback_character(chi, phi)) <= e * swan_conductor(chi));
    }
  }
}

TEST_CASE("torsion length") {
  const RingPtr K = field(2);
  const RingPtr L = field(2, {"u"});
  const TorsionReport r = delta_tor(ExtensionMap{K, L, {S(L, "u^2 + u^3")}});
  CHECK(r.delta == 1);
  // oracle: ord of u f'/f
  const auto f = oracle::to_oracle(S(L, "u^2 + u^3"));
  CHECK((f.theta() * f.inverse(20)).ord() == 1);

  const RingPtr LVW = field(2, {"v", "w"});
  const TorsionReport r2 = delta_tor(ExtensionMap{K, LVW, {S(LVW, "w^2 + v*w^3")}});
  // dlog(w^2 (1 + v w)) = (v w dlog v + v w dlog w)/(1 + v w); db_v = v dlog v
  CHECK(r2.relation_ords == std::vector<std::int64_t>{1, 1});
  CHECK(r2.delta == 1);

  CHECK(delta_tor(ExtensionMap{K, L, {S(L, "u^3")}}).delta == 0);
  CHECK_THROWS_AS(delta_tor(ExtensionMap{K, L, {S(L, "u^2")}}), Unsupported);
  const RingPtr KU = field(2, {"u", "t"});
  CHECK_THROWS_AS(delta_tor(identity_extension(KU)), NonPerfectBase);
}

TEST_CASE("torsion length through a composite") {
  const RingPtr K = field(2, {"t"});
  const RingPtr L = field(2, {"u"});
  const RingPtr M = field(2, {"w"});
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"u^2 + u^3", "w^3 + w^4"}, {"u^3 + u^4", "w^2 + w^5"}, {"u + u^2", "w^2 + w^3"}};
  for (const auto& [f1, f2] : cases) {
    const Series y1 = S(L, f1), y2 = S(M, f2);
    const ExtensionMap a{K, L, {y1}}, b{L, M, {y2}}, ab{K, M, {y1.substitute({y2})}};
    const TorsionReport ra = delta_tor(a), rb = delta_tor(b), rab = delta_tor(ab);
    CHECK(rab.delta == ramification_index(b) * ra.delta + rb.delta);
  }
}

TEST_CASE("conductor change") {
  const RingPtr K = field(2);
  const RingPtr L = field(2, {"u"});
  const ConductorChangeReport r = conductor_change(asw_reduce(W(K, {"t^-3"})), ExtensionMap{K, L, {S(L, "u^2 + u^3")}});
  CHECK(r.e == 2);
  CHECK(r.delta == 1);
  CHECK(r.hypothesis);
  CHECK(r.predicted == 5);
  CHECK(r.direct == 5);
  CHECK(r.status == Status::Pass);

  // the input must be reduced first: t^-2 ~ t^-1
  const ConductorChangeReport tame = conductor_change(Character{W(K, {"t^-2"}), false}, ExtensionMap{K, L, {S(L, "u^3")}});
  CHECK(tame.sw_k == 1);
  CHECK(tame.predicted == 3);
  CHECK(tame.direct == 3);
  CHECK(tame.status == Status::Pass);

  const ConductorChangeReport na = conductor_change(asw_reduce(W(K, {"t^-1"})), ExtensionMap{K, L, {S(L, "u^2 + u^3")}});
  CHECK_FALSE(na.hypothesis);
  CHECK(na.status == Status::NotApplicable);
  CHECK(to_string(na.status) == "NOT_APPLICABLE");
}

TEST_CASE("functoriality of Rsw") {
  std::mt19937_64 rng(62);
  const RingPtr K = field(2);
  const RingPtr L = field(2, {"u"});
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t e = 1 + static_cast<std::int64_t>(rng() % 4);
    const Series y = S(L, "u").pow(e) * (Series::one(L, 1) + testing::random_poly(L, rng, 1, 3));
    const ExtensionMap phi{K, L, {y}};
    const Character chi = asw_reduce(WittVector(K, {testing::random_poly(K, rng, -7, 0)}));
    const std::int64_t n = swan_conductor(chi);
    if (n == 0) continue;
    const Character chi_l = pullback_character(chi, phi);
    const std::int64_t n_l = swan_conductor(chi_l);
    if (n_l == 0) continue;
    // Reduction over L changes the pulled-back form by exact forms with poles
    // at most e n / p, so compare above that.
    const std::int64_t low = std::max(rsw_window_low(n_l, 2), e * n / 2);
    if (low >= n_l) continue;
    const LogForm pulled = pullback_form(rsw_char_p(chi).value.form, {y});
    CHECK(WindowedForm{pulled, n_l, low}.congruent(WindowedForm{rsw_char_p(chi_l).value.form, n_l, low}));
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("ratio experiments") {
  const RingPtr KU = field(2, {"u", "t"});
  const ThmBReport b = thmB_ratio_experiment(asw_reduce(W(KU, {"u*t^-2"})), thmB_family(KU, {3, 5, 7}), true);
  REQUIRE(b.rows.size() == 3);
  const std::vector<std::int64_t> taus{3, 5, 7};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::int64_t tau = taus[i];
    CHECK(b.rows[i].ratio == Ratio::of(2 * tau - 1, tau));
    // oracle: (v^2 + w) w^{-2 tau} over F_2((v))((w))
    const oracle::Poly2 pulled = (oracle::Poly2::mono(2, 1, 2, 0) + oracle::Poly2::mono(2, 1, 0, 1)) *
                                 oracle::Poly2::mono(2, 1, 0, -2 * tau);
    CHECK(b.rows[i].sw == oracle::sw_reduce2(pulled));
    if (i) CHECK(b.rows[i - 1].ratio < b.rows[i].ratio);
  }
  CHECK(b.max_ratio == Ratio::of(13, 7));
  CHECK(b.all_bounded);
  CHECK(b.status == Status::Pass);

  const ThmBReport unit = thmB_ratio_experiment(asw_reduce(W(KU, {"t^-3"})), thmB_family(KU, {1}), true);
  CHECK(unit.rows[0].ratio == Ratio::of(3, 1));

  const RingPtr X = field(2, {"x", "t"});
  const CurveReport c = curve_ratio_experiment(S(X, "x*t^-3"), 0, {2, 4, 8});
  CHECK(c.sw_d == 3);
  for (const auto& row : c.rows) {
    CHECK(row.ratio == Ratio::of(3 * row.e - 1, row.e));
    // oracle: u * u^{-3e}
    CHECK(row.sw == oracle::sw_reduce1(oracle::Series1::mono(2, 1, 1 - 3 * row.e)));
  }
  CHECK(c.all_bounded);
  CHECK(c.approaches);
  const CurveReport plain = curve_ratio_experiment(S(X, "t^-3"), 0, {2});
  CHECK(plain.rows[0].ratio == Ratio::of(3, 2));

  CHECK(Ratio::of(10, 4).to_string() == "5/2");
  CHECK(Ratio::of(6, 3).to_string() == "2");
}
