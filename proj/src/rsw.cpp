#include "rswan/rsw.hpp"

#include "rswan/error.hpp"

namespace rswan {

std::int64_t rsw_window_low(std::int64_t n, int p, std::int64_t absolute_ramification) {
  const std::int64_t m = n / p;
  if (absolute_ramification < 0) return m;
  return std::max(n - absolute_ramification, m);
}

RswValue rsw_char_p(const Character& chi) {
  const std::int64_t n = swan_conductor(chi);
  if (n == 0) throw UnramifiedCharacter("Rsw of an unramified character");
  const WittVector& a = chi.rep;
  const RingPtr& ring = a.ring();
  const int p = ring->prime();
  const std::int64_t m = rsw_window_low(n, p);
  LogForm total(ring, ring->dimension(), 1);
  std::int64_t pi = 1;
  for (int i = 0; i < a.length(); ++i, pi *= p) {
    const Series& ai = a.component(i);
    if (ai.is_exact_zero()) continue;
    LogForm term = d(ai);
    if (pi > 1) term = term * ai.pow(pi - 1);
    total = total - term;
  }
  return RswValue{WindowedForm{total, n, m}.canonical(), chi};
}

WindowedForm rsw_leading_term(const RswValue& v) {
  return WindowedForm{v.value.form, v.value.n, v.value.n - 1}.canonical();
}

std::int64_t sw_from_rsw(const RswValue& v) {
  const WindowedForm w = v.value.canonical();
  if (w.form.is_zero()) throw InconsistentValue("Rsw vanishes in its window");
  const std::int64_t i = -w.form.ord();
  if (i <= w.m || i > w.n) throw InconsistentValue("Rsw order outside its window");
  return i;
}

RswDecomposition rsw_decompose(const RswValue& v) {
  const WindowedForm w = v.value.canonical();
  const RingPtr& ring = w.form.ring();
  const int d = ring->dimension();
  const std::int64_t n = w.n;
  auto is_unit = [](const Series& x) { return !x.is_zero() && x.lowest() >= 0 && !x.coeff(0).is_zero(); };
  RswDecomposition out;
  for (int l = 0; l + 1 < d; ++l) {
    const Series a = w.form.coefficient(LogForm::key_of({l})).shifted(n) * Series::variable(ring, l).inverse();
    out.residual_unit.push_back(is_unit(a));
    out.residual.push_back(a);
  }
  out.c = w.form.coefficient(LogForm::key_of({d - 1})).shifted(n);
  out.c_unit = is_unit(out.c);
  return out;
}

}  // namespace rswan
