#include "rswan/reciprocity.hpp"

#include <boost/rational.hpp>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

#include "rswan/error.hpp"
#include "rswan/parallel.hpp"
#include "rswan/parse.hpp"
#include "rswan/rsw.hpp"

namespace rswan {

namespace {

using Q = boost::rational<long long>;

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, b = ((a % m) + m) % m;
  while (b) {
    const std::int64_t q = g / b;
    std::tie(g, b) = std::make_pair(b, g - q * b);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw ZeroInput("not invertible modulo " + std::to_string(m));
  return ((x % m) + m) % m;
}

bool p_integral(const Q& q, int p) { return q.denominator() % p != 0; }

Q factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Q(f);
}

int mobius(int n) {
  int result = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

using Poly = std::vector<Q>;  // truncated univariate power series

Poly mul_trunc(const Poly& a, const Poly& b, std::size_t len) {
  Poly r(len, Q(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Scalar random_scalar(const ScalarRing& R, std::mt19937_64& rng) {
  return R.decode(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(R.residue_size())));
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(seed + index); }

Series truncated_exp(const Series& x) {
  const RingPtr& ring = x.ring();
  const int level = x.level();
  if (x.is_exact_zero()) return Series::one(ring, level);
  if (level == 0) throw NotTopological("E needs an element of the maximal ideal");
  if (x.is_zero()) {
    if (x.ord_bound() < 1) throw PrecisionExhausted("argument of E is undetermined");
  } else if (x.ord() < 1) {
    throw NotTopological("E(x) needs ord(x) >= 1, got " + std::to_string(x.ord()));
  }
  const int p = ring->prime();
  const std::int64_t M = ring->scalars().modulus();
  Series result = Series::one(ring, level);
  Series power = Series::one(ring, level);
  std::int64_t fact = 1;
  for (int i = 1; i < p; ++i) {
    power = power * x;
    fact *= i;
    result += power.times_int(inverse_mod(fact, M));
  }
  return result;
}

ExpCongruenceReport check_exp_congruences(int p, int degree_bound) {
  if (p != 2 && p != 3 && p != 5) throw Unsupported("p must be 2, 3 or 5");
  if (degree_bound < p || degree_bound > 12) throw Unsupported("degree bound must lie in [p, 12]");
  ExpCongruenceReport rep;
  rep.p = p;
  rep.degree_bound = degree_bound;
  const std::size_t len = static_cast<std::size_t>(degree_bound) + 1;

  Poly E(len, Q(0));
  for (int i = 0; i < p; ++i) E[static_cast<std::size_t>(i)] = Q(1) / factorial(i);

  // (1) bivariate difference, indexed [a][b] for T1^a T2^b.
  {
    std::map<std::pair<int, int>, Q> diff;
    for (int i = 0; i < p; ++i)
      for (int a = 0; a <= i; ++a) diff[{a, i - a}] += Q(binomial(i, a)) / factorial(i);
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) diff[{a, b}] -= E[static_cast<std::size_t>(a)] * E[static_cast<std::size_t>(b)];
    int lowest = -1;
    bool integral = true;
    for (const auto& [e, c] : diff) {
      if (c == Q(0)) continue;
      integral = integral && p_integral(c, p);
      const int deg = e.first + e.second;
      if (lowest < 0 || deg < lowest) lowest = deg;
    }
    rep.pass[0] = integral && (lowest < 0 || lowest >= p);
    rep.detail[0] = lowest < 0 ? "difference vanishes"
                               : "lowest total degree of E(T1+T2)-E(T1)E(T2) is " + std::to_string(lowest);
  }

  // (2) Moebius product.
  {
    Poly prod(len, Q(0));
    prod[0] = 1;
    for (int i = 1; i <= degree_bound; ++i) {
      if (i % p == 0) continue;
      const int mu = mobius(i);
      if (mu == 0) continue;
      const Q r(-mu, i);
      // (1 - T^i)^r = sum_k binom(r, k) (-1)^k T^{ik}
      Poly factor(len, Q(0));
      Q coeff(1);
      for (int k = 0; i * k <= degree_bound; ++k) {
        factor[static_cast<std::size_t>(i * k)] = (k % 2 ? -coeff : coeff);
        coeff = coeff * (r - k) / Q(k + 1);
      }
      prod = mul_trunc(prod, factor, len);
    }
    bool agree = true;
    for (int i = 0; i < p; ++i) agree = agree && prod[static_cast<std::size_t>(i)] == E[static_cast<std::size_t>(i)];
    rep.product_p_integral = true;
    for (const auto& c : prod) rep.product_p_integral = rep.product_p_integral && p_integral(c, p);
    rep.pass[1] = agree;
    rep.detail[1] = agree ? "product agrees with E below degree " + std::to_string(p)
                          : "product differs from E below degree " + std::to_string(p);
  }

  // (3) T E'/E mod T^p.
  {
    Poly inv(len, Q(0));
    inv[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
      Q acc(0);
      for (std::size_t j = 1; j <= n; ++j) acc += E[j] * inv[n - j];
      inv[n] = -acc;
    }
    Poly tde(len, Q(0));
    for (std::size_t i = 1; i < len; ++i) tde[i] = E[i] * Q(static_cast<long long>(i));
    const Poly q = mul_trunc(tde, inv, len);
    bool is_t = true, is_one = true;
    for (int i = 0; i < p; ++i) {
      const Q& c = q[static_cast<std::size_t>(i)];
      is_t = is_t && c == Q(i == 1 ? 1 : 0);
      is_one = is_one && c == Q(i == 0 ? 1 : 0);
    }
    rep.pass[2] = is_t;
    rep.literal_unit_form = is_one;
    rep.detail[2] = is_t ? "T E'/E = T mod T^" + std::to_string(p) : "T E'/E differs from T mod T^" + std::to_string(p);
  }
  return rep;
}

Series theta_lift(const WittVector& a) {
  const RingPtr lift = a.ring()->as_lift();
  const int s = a.length();
  const std::int64_t p = a.ring()->prime();
  Series total = Series::zero(lift, a.ring()->dimension());
  std::int64_t weight = 1;  // p^{s-1-i}
  for (int i = 0; i < s - 1; ++i) weight *= p;
  std::int64_t pi = 1;
  for (int i = 0; i < s; ++i) {
    const Series& ai = a.component(i);
    if (!ai.is_exact_zero()) total += ai.lifted().pow(pi).times_int(weight);
    pi *= p;
    weight /= p;
  }
  return total;
}

std::int64_t res_p(const LogForm& w) {
  if (!w.is_top()) throw NotTopDegree("Res_P needs a top-degree form");
  return residue_to_base(w);
}

std::int64_t eval_symbol(const Character& chi, const std::vector<Series>& ys) {
  const RingPtr& ring = chi.rep.ring();
  const int d = ring->dimension();
  if (static_cast<int>(ys.size()) != d)
    throw DegreeMismatch("symbol needs " + std::to_string(d) + " entries");
  LogForm form = LogForm::function(theta_lift(chi.rep));
  for (const auto& y : ys) {
    if (!y.ring()->same_as(*ring)) throw TowerMismatch("symbol entry over a different tower");
    if (y.is_zero()) throw ZeroEntry("symbol entry is zero");
    const Series lifted = (y.level() == d ? y : y.promoted(d)).lifted();
    form = wedge(form, dlog(lifted));
  }
  return res_p(form);
}

bool CharacterizationReport::all_equal() const {
  for (const auto& s : samples)
    if (!s.equal()) return false;
  return true;
}

CharacterizationReport verify_rsw_characterization(const Character& chi, int samples, std::uint64_t seed) {
  const RingPtr& ring = chi.rep.ring();
  const int d = ring->dimension();
  if (d != 1 && d != 2) throw Unsupported("characterization check needs a tower of dimension 1 or 2");
  const RswValue rsw = rsw_char_p(chi);
  CharacterizationReport rep;
  rep.n = rsw.value.n;
  rep.m = rsw.value.m;
  const std::int64_t a = rep.n - rep.m;
  const int p = ring->prime();
  std::int64_t pb = 1;
  while (pb < a) {
    pb *= p;
    ++rep.b;
  }
  const std::int64_t mod = ring->as_lift()->scalars().modulus();
  const std::int64_t embed = mod / p;  // 1 -> p^{s-1}
  const ScalarRing& R = ring->scalars();
  const int s = ring->tower().s;

  auto random_coefficient = [&](std::mt19937_64& rng) -> Series {
    // Laurent polynomial in the inner variable with exponents in [-2, 2].
    if (d == 1) return Series::constant(ring, random_scalar(R, rng), 0);
    std::vector<Term> terms;
    for (std::int64_t j = -2; j <= 2; ++j)
      if (rng() % 2) terms.push_back(Term{{j}, random_scalar(R, rng)});
    return Series::from_terms(ring, 1, terms);
  };
  auto random_element = [&](std::mt19937_64& rng) -> Series {
    Series x = Series::zero(ring, d);
    for (std::int64_t k = rep.m + 1; k <= rep.n; ++k) x += random_coefficient(rng).promoted(d).shifted(k);
    return x;
  };

  rep.samples.resize(static_cast<std::size_t>(std::max(samples, 0)));
  const Series u = d == 2 ? Series::variable(ring, 0) : Series();
  const Series t = Series::variable(ring, d - 1);

  auto run_sample = [&](std::size_t idx) {
    std::mt19937_64 rng(sample_seed(seed, idx));
    CharacterizationSample& out = rep.samples[idx];
    LogForm alpha;
    std::int64_t lhs = 0;
    if (d == 1) {
      Series x = random_element(rng);
      if (x.is_zero()) x = t.pow(rep.m + 1);
      alpha = LogForm::function(x);
      out.alpha = render_series(x);
      lhs = eval_symbol(chi, {truncated_exp(x)});
      if (s == 1) out.schmid = residue_to_prime_field(wedge(LogForm::function(chi.rep.component(0)), dlog(truncated_exp(x))));
    } else {
      Series A = random_element(rng);
      Series B = random_element(rng);
      if (A.is_zero() && B.is_zero()) B = t.pow(rep.m + 1);
      alpha = LogForm::basis(A, {0}) + LogForm::basis(B, {1});
      out.alpha = render_logform(alpha);
      if (!A.is_zero()) lhs += eval_symbol(chi, {truncated_exp(A), u});
      if (!B.is_zero()) lhs += eval_symbol(chi, {truncated_exp(B), t});
      lhs %= mod;
    }
    out.lhs = lhs;
    const LogForm prod = wedge(alpha, rsw.value.form);
    const LogForm residue = r_b(WindowedForm{prod, a - 1, -1}, rep.b);
    out.rhs = (residue_to_prime_field(residue) * embed) % mod;
  };

  parallel_for(rep.samples.size(), run_sample);
  return rep;
}

}  // namespace rswan
