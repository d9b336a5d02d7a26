#include "rswan/witt.hpp"

#include <algorithm>
#include <optional>

#include "rswan/error.hpp"
#include "rswan/parse.hpp"
#include "rswan/witt_polynomials.hpp"

namespace rswan {

namespace {

void check_same(const WittVector& a, const WittVector& b) {
  if (!a.ring()->same_as(*b.ring()) || a.length() != b.length())
    throw TowerMismatch("Witt vectors over different towers");
}

// Internal storage <-> standard order.
std::vector<Series> standard(const WittVector& a) {
  std::vector<Series> x(a.components().rbegin(), a.components().rend());
  return x;
}

WittVector from_standard(const RingPtr& ring, std::vector<Series> x) {
  std::reverse(x.begin(), x.end());
  return WittVector(ring, std::move(x));
}

bool all_zero(const std::vector<Series>& v) {
  return std::all_of(v.begin(), v.end(), [](const Series& c) { return c.is_exact_zero(); });
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Lowest polar exponent of a component, or nullopt when it has no pole.
std::optional<std::int64_t> polar_ord(const Series& x) {
  if (x.is_exact_zero()) return std::nullopt;
  if (x.ceiling() < 0) throw PrecisionExhausted("polar part of a Witt component is not fully known");
  const std::int64_t hi = std::min<std::int64_t>(0, x.lowest() + static_cast<std::int64_t>(x.slots()));
  for (std::int64_t k = x.lowest(); k < hi; ++k) {
    const Series c = x.coeff(k);
    if (!c.is_zero()) return k;
    if (!c.is_exact()) throw PrecisionExhausted("leading polar coefficient is undetermined");
  }
  return std::nullopt;
}

}  // namespace

WittVector::WittVector(RingPtr ring, std::vector<Series> internal) : ring_(std::move(ring)), a_(std::move(internal)) {
  if (!ring_->is_field()) throw TowerMismatch("Witt vectors live over the field K");
  if (static_cast<int>(a_.size()) != ring_->tower().s)
    throw DegreeMismatch("Witt vector needs " + std::to_string(ring_->tower().s) + " components");
  const int d = ring_->dimension();
  for (auto& c : a_) {
    if (!c.valid()) c = Series::zero(ring_, d);
    if (!c.ring()->same_as(*ring_)) throw TowerMismatch("Witt component over a different tower");
    if (c.level() != d) c = c.promoted(d);
  }
}

WittVector WittVector::zero(const RingPtr& ring) {
  return WittVector(ring, std::vector<Series>(static_cast<std::size_t>(ring->tower().s), Series::zero(ring)));
}

WittVector WittVector::from_print_order(const RingPtr& ring, std::vector<Series> printed) {
  if (static_cast<int>(printed.size()) != ring->tower().s)
    throw DegreeMismatch("Witt vector needs " + std::to_string(ring->tower().s) + " components");
  return from_standard(ring, std::move(printed));
}

std::vector<Series> WittVector::print_order() const { return standard(*this); }

bool WittVector::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Series& c) { return c.is_zero(); });
}

bool WittVector::congruent(const WittVector& o) const {
  check_same(*this, o);
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!a_[i].congruent(o.a_[i])) return false;
  return true;
}

WittVector witt_add(const WittVector& a, const WittVector& b) {
  check_same(a, b);
  const int s = a.length();
  if (all_zero(b.components())) return a;
  if (all_zero(a.components())) return b;
  if (s == 1) return WittVector(a.ring(), {a.component(0) + b.component(0)});
  const auto& polys = WittPolynomials::get(a.ring()->prime(), s);
  std::vector<Series> vars = standard(a);
  const std::vector<Series> y = standard(b);
  vars.insert(vars.end(), y.begin(), y.end());
  std::vector<Series> out;
  for (int n = 0; n < s; ++n) out.push_back(evaluate(polys.sum()[static_cast<std::size_t>(n)], vars));
  return from_standard(a.ring(), std::move(out));
}

WittVector witt_neg(const WittVector& a) {
  const int s = a.length();
  if (s == 1) return WittVector(a.ring(), {-a.component(0)});
  if (all_zero(a.components())) return a;
  const auto& polys = WittPolynomials::get(a.ring()->prime(), s);
  const std::vector<Series> vars = standard(a);
  std::vector<Series> out;
  for (int n = 0; n < s; ++n) out.push_back(evaluate(polys.negation()[static_cast<std::size_t>(n)], vars));
  return from_standard(a.ring(), std::move(out));
}

WittVector witt_sub(const WittVector& a, const WittVector& b) { return witt_add(a, witt_neg(b)); }

WittVector witt_frobenius(const WittVector& a) {
  std::vector<Series> c;
  for (const auto& x : a.components()) c.push_back(x.frobenius());
  return WittVector(a.ring(), std::move(c));
}

WittVector witt_verschiebung(const WittVector& a, int times) {
  if (times < 0) throw Unsupported("negative Verschiebung power");
  const int s = a.length();
  std::vector<Series> c(static_cast<std::size_t>(s), Series::zero(a.ring()));
  for (int i = 0; i + times < s; ++i) c[static_cast<std::size_t>(i)] = a.component(i + times);
  return WittVector(a.ring(), std::move(c));
}

WittVector witt_teichmuller(const Series& x) {
  const RingPtr& ring = x.ring();
  const int s = ring->tower().s;
  std::vector<Series> c(static_cast<std::size_t>(s), Series::zero(ring));
  c.back() = x.level() == ring->dimension() ? x : x.promoted(ring->dimension());
  return WittVector(ring, std::move(c));
}

std::int64_t witt_ord(const WittVector& a) {
  const std::int64_t p = a.ring()->prime();
  std::optional<std::int64_t> best;
  for (int i = 0; i < a.length(); ++i) {
    const Series& c = a.component(i);
    if (c.is_exact_zero()) continue;
    const std::int64_t v = ipow(p, i) * c.ord();
    best = best ? std::min(*best, v) : v;
  }
  if (!best) throw ZeroInput("witt_ord of the zero vector");
  return *best;
}

Character asw_reduce(const WittVector& a) {
  const RingPtr& ring = a.ring();
  const int s = a.length();
  const int d = ring->dimension();
  const std::int64_t p = ring->prime();
  WittVector cur = a;
  for (int j = 0; j < s; ++j) {
    for (int guard = 0;; ++guard) {
      if (guard > 100000) throw InconsistentValue("reduction does not terminate");
      const Series x = standard(cur)[static_cast<std::size_t>(j)];
      if (x.is_exact_zero()) break;
      if (x.ceiling() < 0) throw PrecisionExhausted("polar part of a Witt component is not fully known");
      Series z = Series::zero(ring, d);
      const std::int64_t hi = std::min<std::int64_t>(0, x.lowest() + static_cast<std::int64_t>(x.slots()));
      for (std::int64_t k = x.lowest(); k < hi; ++k) {
        if (k % p != 0) continue;
        const Series c = x.coeff(k);
        if (!c.is_exact()) throw NonPolynomialTail("polar coefficient is not a finite Laurent polynomial");
        if (c.is_zero()) continue;
        const Series part = c.pth_power_part();
        if (part.is_zero()) continue;
        z += part.pth_root().promoted(d).shifted(k / p);
      }
      if (z.is_zero()) break;
      const WittVector step = witt_sub(witt_teichmuller(z.frobenius()), witt_teichmuller(z));
      // a - V^j([z^p] - [z]); component j drops by z^p - z, earlier ones stay.
      cur = witt_sub(cur, witt_verschiebung(step, j));
    }
  }
  return Character{cur, true};
}

std::int64_t swan_conductor(const Character& chi) {
  if (!chi.reduced) throw NotReduced("swan_conductor needs a reduced character");
  const WittVector& a = chi.rep;
  const std::int64_t p = a.ring()->prime();
  std::int64_t sw = 0;
  for (int i = 0; i < a.length(); ++i)
    if (auto k = polar_ord(a.component(i))) sw = std::max(sw, -ipow(p, i) * *k);
  return sw;
}

std::int64_t swan_conductor(const WittVector& a) { return swan_conductor(asw_reduce(a)); }

std::vector<std::string> render_witt(const WittVector& a) {
  std::vector<std::string> out;
  for (const auto& c : a.print_order()) out.push_back(render_series(c));
  return out;
}

}  // namespace rswan
