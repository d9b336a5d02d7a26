#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rswan/error.hpp"
#include "rswan/rsw.hpp"
#include "support.hpp"

using namespace rswan;
using testing::S;
using testing::W;
using testing::field;

namespace {

RswValue rsw_of(const WittVector& a) { return rsw_char_p(asw_reduce(a)); }

// -sum_i a_i^{p^i - 1} t a_i' over Z/p, from the internal components.
oracle::Series1 rsw_oracle(const WittVector& a) {
  const oracle::i64 p = a.ring()->prime();
  oracle::Series1 total{p, {}, oracle::kExact};
  oracle::i64 pi = 1;
  for (int i = 0; i < a.length(); ++i, pi *= p) {
    const auto ai = oracle::to_oracle(a.component(i));
    total = total - ai.pow(pi - 1) * ai.theta();
  }
  return total;
}

}  // namespace

TEST_CASE("examples") {
  const RingPtr K3 = field(3);
  const RswValue v1 = rsw_of(W(K3, {"t^-2"}));
  CHECK(render_form(v1.value) == "2*t^-2 dlog(t) | window(2,0)");
  CHECK(render_form(rsw_leading_term(v1)) == "2*t^-2 dlog(t) | window(2,1)");
  CHECK(sw_from_rsw(v1) == 2);

  const RingPtr K2 = field(2, {"t"}, 2);
  const WittVector a = W(K2, {"t^-1", "t^-3"});
  const RswValue v2 = rsw_of(a);
  CHECK(render_form(v2.value) == "t^-3 dlog(t) + t^-2 dlog(t) | window(3,1)");
  const auto want = rsw_oracle(a);
  const Series got = v2.value.canonical().form.coefficient(LogForm::key_of({0}));
  for (std::int64_t e = -3; e < -1; ++e) CHECK(got.scalar_coeff(e).c[0] == want.at(e));
  CHECK(render_form(rsw_leading_term(v2)) == "t^-3 dlog(t) | window(3,2)");
  CHECK(sw_from_rsw(v2) == 3);

  const RingPtr KU = field(2, {"u", "t"});
  CHECK(render_form(rsw_of(W(KU, {"u*t^-2"})).value) == "u*t^-2 dlog(u) | window(2,1)");
}

TEST_CASE("contract") {
  const RingPtr K = field(2);
  CHECK_THROWS_AS(rsw_char_p(asw_reduce(W(K, {"1 + t"}))), UnramifiedCharacter);
  CHECK_THROWS_AS(rsw_char_p(Character{W(K, {"t^-4"}), false}), NotReduced);
  CHECK(rsw_window_low(7, 2) == 3);
  CHECK(rsw_window_low(7, 3) == 2);
}

TEST_CASE("decomposition") {
  const RingPtr KU = field(2, {"u", "t"});
  const RswDecomposition a = rsw_decompose(rsw_of(W(KU, {"u*t^-2"})));
  REQUIRE(a.residual.size() == 1);
  CHECK(a.residual[0].congruent(Series::one(KU, 2)));
  CHECK(a.residual_unit[0]);
  CHECK(a.c.is_zero());
  CHECK_FALSE(a.c_unit);

  const RswDecomposition b = rsw_decompose(rsw_of(W(KU, {"t^-3"})));
  CHECK(b.residual[0].is_zero());
  CHECK(b.c.congruent(Series::one(KU, 2)));
  CHECK(b.c_unit);

  const RswDecomposition c = rsw_decompose(rsw_of(W(KU, {"u*t^-3"})));
  CHECK(c.residual[0].congruent(Series::one(KU, 2)));
  CHECK(c.c.congruent(S(KU, "u")));
  CHECK(c.c_unit);
  // differentiation oracle: -T d/dT of u t^-3 in each slot, times t^3
  const auto f = oracle::to_poly2(S(KU, "u*t^-3"));
  oracle::Poly2 du{2, {}}, dt{2, {}};
  for (auto [e, v] : f.c) {
    du = du + oracle::Poly2::mono(2, -v * e.first, e.first, e.second + 3);
    dt = dt + oracle::Poly2::mono(2, -v * e.second, e.first, e.second + 3);
  }
  CHECK(oracle::to_poly2(c.c).c == dt.c);
  CHECK(oracle::to_poly2(c.residual[0] * S(KU, "u")).c == du.c);
}

TEST_CASE("differentiation oracle on random characters") {
  std::mt19937_64 rng(41);
  for (auto [p, s] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}, {2, 3}}) {
    const RingPtr K = field(p, {"t"}, s);
    for (int trial = 0; trial < 10; ++trial) {
      const Character chi = asw_reduce(testing::random_witt(K, rng, -5, 1));
      if (swan_conductor(chi) == 0) continue;
      const RswValue v = rsw_char_p(chi);
      const auto want = rsw_oracle(chi.rep);
      const Series got = v.value.canonical().form.coefficient(LogForm::key_of({0}));
      for (std::int64_t e = -v.value.n; e < -v.value.m; ++e) CHECK(got.scalar_coeff(e).c[0] == want.at(e));
    }
  }
}

TEST_CASE("well-definedness, closedness and additivity") {
  std::mt19937_64 rng(42);
  for (auto [p, s, dim] : {std::tuple{2, 1, 1}, {2, 2, 1}, {3, 1, 1}, {3, 2, 1}, {2, 1, 2}, {3, 1, 2}, {2, 2, 2}}) {
    const RingPtr K = field(p, dim == 1 ? std::vector<std::string>{"t"} : std::vector<std::string>{"u", "t"}, s);
    for (int trial = 0; trial < 6; ++trial) {
      const Character chi = asw_reduce(testing::random_witt(K, rng, -5, 1, -1, 1));
      const std::int64_t n = swan_conductor(chi);
      if (n == 0) continue;
      const RswValue v = rsw_char_p(chi);
      const Character other = asw_reduce(witt_add(chi.rep, testing::as_coboundary(testing::random_witt(K, rng, -2, 1, -1, 1))));
      REQUIRE(swan_conductor(other) == n);
      CHECK(v.value.congruent(rsw_char_p(other).value));

      if (dim == 2) CHECK(WindowedForm{d(v.value.form), v.value.n, v.value.m}.congruent(
          WindowedForm{LogForm(K, 2, 2), v.value.n, v.value.m}));
      CHECK(sw_from_rsw(v) == n);
      CHECK_FALSE(rsw_leading_term(v).canonical().form.is_zero());

      const Character chi2 = asw_reduce(testing::random_witt(K, rng, -5, 1, -1, 1));
      const Character sum = asw_reduce(witt_add(chi.rep, chi2.rep));
      if (swan_conductor(chi2) == n && swan_conductor(sum) == n) {
        const WindowedForm lhs = rsw_char_p(sum).value;
        const WindowedForm rhs{v.value.form + rsw_char_p(chi2).value.form, n, v.value.m};
        CHECK(lhs.congruent(rhs));
      }
    }
  }
}

TEST_CASE("catalog characters: Sw recovery and injectivity") {
  for (int p : {2, 3, 5}) {
    const auto chars = testing::catalog_characters(p);
    for (const auto& c : chars) {
      const Character chi = asw_reduce(c.rep);
      if (swan_conductor(chi) == 0) continue;
      CHECK_MESSAGE(sw_from_rsw(rsw_char_p(chi)) == swan_conductor(chi), c.name);
    }
    // distinct classes in F_n / F_m have distinct values
    for (const auto& x : chars)
      for (const auto& y : chars) {
        if (&x == &y || !x.rep.ring()->same_as(*y.rep.ring()) || x.rep.length() != y.rep.length()) continue;
        const std::int64_t n = swan_conductor(x.rep);
        if (n == 0 || swan_conductor(y.rep) != n) continue;
        const std::int64_t m = rsw_window_low(n, p);
        const bool same_class = swan_conductor(witt_sub(x.rep, y.rep)) <= m;
        const bool same_value = rsw_of(x.rep).value.congruent(rsw_of(y.rep).value);
        CHECK_MESSAGE(same_class == same_value, x.name << " vs " << y.name);
      }
  }
}
