#include "rswan/series.hpp"

#include <algorithm>
#include <map>

#include "rswan/error.hpp"
#include "rswan/parse.hpp"

namespace rswan {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= Series::kExact || b >= Series::kExact) return Series::kExact;
  return std::min(a + b, Series::kExact);
}

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a >= Series::kExact || b >= Series::kExact) return Series::kExact;
  return std::clamp(a * b, -Series::kExact, Series::kExact);
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

bool divisible(std::int64_t a, std::int64_t p) { return a % p == 0; }

}  // namespace

Series Series::zero(RingPtr ring, int level) {
  if (level < 0 || level > ring->dimension()) throw TowerMismatch("series level out of range");
  Series s;
  s.ring_ = std::move(ring);
  s.level_ = level;
  return s;
}

Series Series::constant(RingPtr ring, const Scalar& c, int level) {
  Series s = zero(std::move(ring), level);
  if (level == 0) {
    s.scalar_ = c;
  } else if (level == 1) {
    s.sc_.push_back(c);
  } else {
    s.kids_.push_back(constant(s.ring_, c, level - 1));
  }
  s.normalize();
  return s;
}

Series Series::from_int(RingPtr ring, std::int64_t v, int level) {
  const Scalar c = ring->scalars().from_int(v);
  return constant(std::move(ring), c, level);
}

Series Series::variable(RingPtr ring, int index, int level) {
  if (index < 0 || index >= level) throw TowerMismatch("variable index out of range for level");
  std::vector<std::int64_t> exps(level, 0);
  exps[index] = 1;
  const Scalar one = ring->scalars().one();
  return monomial(std::move(ring), one, exps);
}

Series Series::monomial(RingPtr ring, const Scalar& c, const std::vector<std::int64_t>& exps) {
  const int level = static_cast<int>(exps.size());
  if (level == 0) return constant(std::move(ring), c, 0);
  std::vector<std::int64_t> inner(exps.begin(), exps.end() - 1);
  Series s = zero(ring, level);
  s.lowest_ = exps.back();
  if (level == 1)
    s.sc_.push_back(c);
  else
    s.kids_.push_back(monomial(ring, c, inner));
  s.normalize();
  return s;
}

Series Series::from_terms(RingPtr ring, int level, const std::vector<Term>& terms) {
  // Group by the top exponent, then build the inner coefficients recursively.
  if (level == 0) {
    Scalar acc{};
    for (const auto& t : terms) acc = ring->scalars().add(acc, t.coeff);
    return constant(std::move(ring), acc, 0);
  }
  std::map<std::int64_t, std::vector<Term>> groups;
  for (const auto& t : terms) {
    if (static_cast<int>(t.exps.size()) != level) throw TowerMismatch("term has the wrong number of exponents");
    for (auto e : t.exps)
      if (e < kMinOrd) throw OrdOutOfRange("exponent " + std::to_string(e) + " is below the supported range");
    groups[t.exps.back()].push_back(Term{{t.exps.begin(), t.exps.end() - 1}, t.coeff});
  }
  Series s = zero(ring, level);
  if (groups.empty()) return s;
  s.lowest_ = groups.begin()->first;
  const std::int64_t span = groups.rbegin()->first - s.lowest_ + 1;
  if (level == 1) {
    s.sc_.assign(span, Scalar{});
    for (auto& [e, ts] : groups) {
      Scalar acc{};
      for (const auto& t : ts) acc = ring->scalars().add(acc, t.coeff);
      s.sc_[e - s.lowest_] = acc;
    }
  } else {
    s.kids_.assign(span, zero(ring, level - 1));
    for (auto& [e, ts] : groups) s.kids_[e - s.lowest_] = from_terms(ring, level - 1, ts);
  }
  s.normalize();
  return s;
}

bool Series::is_zero() const { return !nz_; }

bool Series::is_one() const {
  if (level_ == 0) return ring_->scalars().is_one(scalar_);
  if (!exact_ || slots() != 1 || lowest_ != 0) return false;
  return level_ == 1 ? ring_->scalars().is_one(sc_[0]) : kids_[0].is_one();
}

std::int64_t Series::ord() const {
  if (level_ == 0) throw TowerMismatch("ord of a scalar");
  if (!nz_) {
    if (exact_) throw ZeroInput("ord of zero");
    throw PrecisionExhausted("valuation undetermined below exponent " + std::to_string(ceiling_));
  }
  if (level_ >= 2 && !kids_[0].nz_)
    throw PrecisionExhausted("leading coefficient at exponent " + std::to_string(lowest_) +
                             " is not determined");
  return lowest_;
}

std::int64_t Series::ord_bound() const {
  if (level_ == 0) return 0;
  return slots() == 0 ? ceiling_ : lowest_;
}

Series Series::coeff(std::int64_t j) const {
  if (level_ == 0) throw TowerMismatch("coefficient of a scalar");
  if (j >= ceiling_) throw PrecisionExhausted("coefficient at exponent " + std::to_string(j) + " is beyond precision");
  const std::int64_t idx = j - lowest_;
  if (idx < 0 || idx >= static_cast<std::int64_t>(slots())) return zero(ring_, level_ - 1);
  if (level_ == 1) return constant(ring_, sc_[idx], 0);
  return kids_[idx];
}

Scalar Series::scalar_coeff(std::int64_t j) const {
  if (level_ != 1) throw TowerMismatch("scalar_coeff needs a level-1 series");
  if (j >= ceiling_) throw PrecisionExhausted("coefficient at exponent " + std::to_string(j) + " is beyond precision");
  const std::int64_t idx = j - lowest_;
  if (idx < 0 || idx >= static_cast<std::int64_t>(sc_.size())) return Scalar{};
  return sc_[idx];
}

void Series::check_compatible(const Series& o) const {
  if (!ring_ || !o.ring_) throw TowerMismatch("uninitialized series");
  if (level_ != o.level_ || !ring_->same_as(*o.ring_)) throw TowerMismatch("series from different towers or levels");
}

Series Series::empty_like(std::int64_t ceiling) const {
  Series s = zero(ring_, level_);
  s.ceiling_ = ceiling;
  s.exact_ = ceiling >= kExact;
  return s;
}

void Series::apply_budget() {
  if (ceiling_ >= kExact || slots() == 0) return;
  const std::int64_t n = ring_->precision();
  if (ceiling_ - lowest_ > n) ceiling_ = lowest_ + n;
  const std::int64_t keep = std::max<std::int64_t>(0, ceiling_ - lowest_);
  if (level_ == 1 && static_cast<std::int64_t>(sc_.size()) > keep) sc_.resize(keep);
  if (level_ >= 2 && static_cast<std::int64_t>(kids_.size()) > keep) kids_.resize(keep);
}

void Series::normalize() {
  if (level_ == 0) {
    exact_ = true;
    nz_ = !ring_->scalars().is_zero(scalar_);
    return;
  }
  if (level_ == 1) {
    std::size_t first = 0;
    while (first < sc_.size() && ring_->scalars().is_zero(sc_[first])) ++first;
    if (first == sc_.size()) {
      sc_.clear();
      lowest_ = 0;
    } else {
      if (first) sc_.erase(sc_.begin(), sc_.begin() + static_cast<std::ptrdiff_t>(first));
      lowest_ += static_cast<std::int64_t>(first);
      while (!sc_.empty() && ring_->scalars().is_zero(sc_.back())) sc_.pop_back();
    }
    apply_budget();
    while (!sc_.empty() && ring_->scalars().is_zero(sc_.back())) sc_.pop_back();
    exact_ = ceiling_ >= kExact;
    nz_ = !sc_.empty();
    return;
  }
  std::size_t first = 0;
  while (first < kids_.size() && kids_[first].is_exact_zero()) ++first;
  if (first == kids_.size()) {
    kids_.clear();
    lowest_ = 0;
  } else {
    if (first) kids_.erase(kids_.begin(), kids_.begin() + static_cast<std::ptrdiff_t>(first));
    lowest_ += static_cast<std::int64_t>(first);
  }
  apply_budget();
  while (!kids_.empty() && kids_.back().is_exact_zero()) kids_.pop_back();
  exact_ = ceiling_ >= kExact;
  nz_ = false;
  for (const auto& k : kids_) {
    exact_ = exact_ && k.exact_;
    nz_ = nz_ || k.nz_;
  }
}

Series Series::operator+(const Series& o) const {
  check_compatible(o);
  const ScalarRing& R = ring_->scalars();
  if (level_ == 0) {
    Series r = *this;
    r.scalar_ = R.add(scalar_, o.scalar_);
    r.normalize();
    return r;
  }
  const std::int64_t ceil = std::min(ceiling_, o.ceiling_);
  Series r = empty_like(ceil);
  const bool a_has = slots() > 0, b_has = o.slots() > 0;
  if (!a_has && !b_has) {
    r.normalize();
    return r;
  }
  std::int64_t lo = a_has ? lowest_ : o.lowest_;
  if (a_has && b_has) lo = std::min(lowest_, o.lowest_);
  std::int64_t hi = a_has ? lowest_ + static_cast<std::int64_t>(slots()) : lo;
  if (b_has) hi = std::max(hi, o.lowest_ + static_cast<std::int64_t>(o.slots()));
  hi = std::min(hi, ceil);
  if (hi <= lo) {
    r.normalize();
    return r;
  }
  r.lowest_ = lo;
  const std::int64_t n = hi - lo;
  if (level_ == 1) {
    r.sc_.assign(n, Scalar{});
    for (std::size_t i = 0; i < sc_.size(); ++i) {
      const std::int64_t e = lowest_ + static_cast<std::int64_t>(i);
      if (e >= hi) break;
      r.sc_[e - lo] = sc_[i];
    }
    for (std::size_t i = 0; i < o.sc_.size(); ++i) {
      const std::int64_t e = o.lowest_ + static_cast<std::int64_t>(i);
      if (e >= hi) break;
      r.sc_[e - lo] = R.add(r.sc_[e - lo], o.sc_[i]);
    }
  } else {
    r.kids_.assign(n, zero(ring_, level_ - 1));
    for (std::size_t i = 0; i < kids_.size(); ++i) {
      const std::int64_t e = lowest_ + static_cast<std::int64_t>(i);
      if (e >= hi) break;
      r.kids_[e - lo] = kids_[i];
    }
    for (std::size_t i = 0; i < o.kids_.size(); ++i) {
      const std::int64_t e = o.lowest_ + static_cast<std::int64_t>(i);
      if (e >= hi) break;
      if (o.kids_[i].is_exact_zero()) continue;
      Series& slot = r.kids_[e - lo];
      slot = slot.is_exact_zero() ? o.kids_[i] : slot + o.kids_[i];
    }
  }
  r.normalize();
  return r;
}

Series Series::operator-() const {
  const ScalarRing& R = ring_->scalars();
  Series r = *this;
  if (level_ == 0) {
    r.scalar_ = R.neg(scalar_);
  } else if (level_ == 1) {
    for (auto& c : r.sc_) c = R.neg(c);
  } else {
    for (auto& k : r.kids_) k = -k;
  }
  return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
  check_compatible(o);
  if (level_ == 0) {
    Series r = *this;
    r.scalar_ = ring_->scalars().mul(scalar_, o.scalar_);
    r.normalize();
    return r;
  }
  return multiply_parallel(*this, o);
}

Series Series::scaled(const Scalar& c) const {
  const ScalarRing& R = ring_->scalars();
  Series r = *this;
  if (level_ == 0) {
    r.scalar_ = R.mul(scalar_, c);
  } else if (level_ == 1) {
    for (auto& x : r.sc_) x = R.mul(x, c);
  } else {
    for (auto& k : r.kids_) k = k.scaled(c);
  }
  r.normalize();
  return r;
}

Series Series::times_int(std::int64_t v) const { return scaled(ring_->scalars().from_int(v)); }

Series Series::inverse() const {
  const ScalarRing& R = ring_->scalars();
  if (level_ == 0) {
    Series r = *this;
    r.scalar_ = R.inv(scalar_);
    return r;
  }
  if (!nz_) {
    if (exact_) throw ZeroInput("inverse of zero");
    throw PrecisionExhausted("inverse of a value not known to be nonzero");
  }
  const std::int64_t v = ord();
  if (level_ == 1 && !R.is_unit(sc_[0])) throw ZeroInput("leading coefficient is not a unit");
  if (exact_ && slots() == 1) {
    Series r = empty_like(kExact);
    r.lowest_ = -v;
    if (level_ == 1)
      r.sc_.push_back(R.inv(sc_[0]));
    else
      r.kids_.push_back(kids_[0].inverse());
    r.normalize();
    return r;
  }
  const std::int64_t n = ring_->precision();
  const std::int64_t rel = ceiling_ >= kExact ? n : std::min(ceiling_ - v, n);
  Series r = empty_like(-v + rel);
  r.lowest_ = -v;
  const std::int64_t na = static_cast<std::int64_t>(slots());
  if (level_ == 1) {
    std::vector<Scalar> b(rel);
    const Scalar b0 = R.inv(sc_[0]);
    b[0] = b0;
    for (std::int64_t k = 1; k < rel; ++k) {
      Scalar acc{};
      const std::int64_t jmax = std::min(k, na - 1);
      for (std::int64_t j = 1; j <= jmax; ++j) {
        if (R.is_zero(sc_[j])) continue;
        acc = R.add(acc, R.mul(sc_[j], b[k - j]));
      }
      b[k] = R.neg(R.mul(b0, acc));
    }
    r.sc_ = std::move(b);
  } else {
    std::vector<Series> b(rel, zero(ring_, level_ - 1));
    const Series b0 = kids_[0].inverse();
    b[0] = b0;
    for (std::int64_t k = 1; k < rel; ++k) {
      Series acc = zero(ring_, level_ - 1);
      const std::int64_t jmax = std::min(k, na - 1);
      for (std::int64_t j = 1; j <= jmax; ++j) {
        if (kids_[j].is_exact_zero() || b[k - j].is_exact_zero()) continue;
        acc += kids_[j] * b[k - j];
      }
      b[k] = acc.is_exact_zero() ? acc : -(b0 * acc);
    }
    r.kids_ = std::move(b);
  }
  r.normalize();
  return r;
}

Series Series::pow(std::int64_t n) const {
  if (n < 0) return inverse().pow(-n);
  Series result = one(ring_, level_);
  if (n == 0) return result;
  const std::int64_t p = ring_->prime();
  auto small_pow = [](Series base, std::int64_t e) {
    Series acc = one(base.ring_, base.level_);
    bool first = true;
    while (e) {
      if (e & 1) {
        acc = first ? base : acc * base;
        first = false;
      }
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  };
  if (!ring_->is_field() || level_ == 0) return small_pow(*this, n);
  Series base = *this;
  bool first = true;
  while (n) {
    const std::int64_t digit = n % p;
    if (digit) {
      Series f = small_pow(base, digit);
      result = first ? f : result * f;
      first = false;
    }
    n /= p;
    if (n) base = base.frobenius();
  }
  return result;
}

Series Series::shifted(std::int64_t k) const {
  if (level_ == 0) throw TowerMismatch("shift of a scalar");
  Series r = *this;
  if (slots() > 0) r.lowest_ += k;
  r.ceiling_ = sat_add(ceiling_, k);
  return r;
}

Series Series::truncated(std::int64_t c) const {
  if (level_ == 0 || c >= ceiling_) return *this;
  Series r = *this;
  r.ceiling_ = c;
  const std::int64_t keep = std::max<std::int64_t>(0, c - lowest_);
  if (level_ == 1) {
    if (static_cast<std::int64_t>(r.sc_.size()) > keep) r.sc_.resize(keep);
  } else if (static_cast<std::int64_t>(r.kids_.size()) > keep) {
    r.kids_.resize(keep);
  }
  r.normalize();
  return r;
}

Series Series::window(std::int64_t lo, std::int64_t hi) const {
  Series r = truncated(hi);
  if (r.slots() == 0 || r.lowest_ >= lo) return r;
  const std::int64_t drop = std::min<std::int64_t>(lo - r.lowest_, static_cast<std::int64_t>(r.slots()));
  if (level_ == 1)
    r.sc_.erase(r.sc_.begin(), r.sc_.begin() + drop);
  else
    r.kids_.erase(r.kids_.begin(), r.kids_.begin() + drop);
  r.lowest_ += drop;
  r.normalize();
  return r;
}

Series Series::promoted(int level) const {
  if (level < level_ || level > ring_->dimension()) throw TowerMismatch("cannot promote to a lower level");
  Series cur = *this;
  while (cur.level_ < level) {
    Series up = zero(ring_, cur.level_ + 1);
    if (up.level_ == 1)
      up.sc_.push_back(cur.scalar_);
    else
      up.kids_.push_back(cur);
    up.normalize();
    cur = std::move(up);
  }
  return cur;
}

Series Series::frobenius() const {
  if (!ring_->is_field()) throw Unsupported("Frobenius is only implemented in characteristic p");
  const ScalarRing& R = ring_->scalars();
  const std::int64_t p = ring_->prime();
  Series r = *this;
  if (level_ == 0) {
    r.scalar_ = R.frobenius(scalar_);
    r.normalize();
    return r;
  }
  r.lowest_ = lowest_ * p;
  r.ceiling_ = sat_mul(ceiling_, p);
  const std::size_t n = slots();
  if (level_ == 1) {
    r.sc_.assign(n ? (n - 1) * p + 1 : 0, Scalar{});
    for (std::size_t i = 0; i < n; ++i) r.sc_[i * p] = R.frobenius(sc_[i]);
  } else {
    r.kids_.assign(n ? (n - 1) * p + 1 : 0, zero(ring_, level_ - 1));
    for (std::size_t i = 0; i < n; ++i) r.kids_[i * p] = kids_[i].frobenius();
  }
  r.normalize();
  return r;
}

Series Series::pth_power_part() const {
  if (level_ == 0) return *this;
  const std::int64_t p = ring_->prime();
  Series r = *this;
  for (std::size_t i = 0; i < slots(); ++i) {
    const std::int64_t e = lowest_ + static_cast<std::int64_t>(i);
    if (level_ == 1) {
      if (!divisible(e, p)) r.sc_[i] = Scalar{};
    } else {
      r.kids_[i] = divisible(e, p) ? kids_[i].pth_power_part() : zero(ring_, level_ - 1);
    }
  }
  r.normalize();
  return r;
}

bool Series::is_pth_power() const {
  const std::int64_t p = ring_->prime();
  bool ok = true;
  for_each_term([&](const std::vector<std::int64_t>& exps, const Scalar&) {
    for (auto e : exps)
      if (!divisible(e, p)) ok = false;
  });
  return ok;
}

Series Series::root_impl(bool strict) const {
  if (!ring_->is_field()) throw Unsupported("p-th roots are only implemented in characteristic p");
  const ScalarRing& R = ring_->scalars();
  const std::int64_t p = ring_->prime();
  if (level_ == 0) {
    Series r = *this;
    r.scalar_ = R.pth_root(scalar_);
    return r;
  }
  Series r = empty_like(ceiling_ >= kExact ? kExact : ceil_div(ceiling_, p));
  const std::size_t n = slots();
  if (n == 0) {
    r.normalize();
    return r;
  }
  const std::int64_t lo = ceil_div(lowest_, p);
  const std::int64_t hi = floor_div(lowest_ + static_cast<std::int64_t>(n) - 1, p);
  r.lowest_ = lo;
  const std::int64_t m = std::max<std::int64_t>(0, hi - lo + 1);
  if (level_ == 1)
    r.sc_.assign(m, Scalar{});
  else
    r.kids_.assign(m, zero(ring_, level_ - 1));
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t e = lowest_ + static_cast<std::int64_t>(i);
    const bool nonzero = level_ == 1 ? !R.is_zero(sc_[i]) : kids_[i].nz_;
    if (!divisible(e, p)) {
      if (strict && nonzero) throw NoPthRoot("exponent " + std::to_string(e) + " is not divisible by p");
      continue;
    }
    const std::int64_t idx = e / p - lo;
    if (level_ == 1)
      r.sc_[idx] = R.pth_root(sc_[i]);
    else
      r.kids_[idx] = kids_[i].root_impl(strict);
  }
  r.normalize();
  return r;
}

Series Series::pth_root() const { return root_impl(true); }

Series Series::cartier() const { return root_impl(false); }

Series Series::log_derivative(int var) const {
  if (var < 0 || var >= level_) throw TowerMismatch("log_derivative variable out of range");
  Series r = *this;
  if (var == level_ - 1) {
    const ScalarRing& R = ring_->scalars();
    for (std::size_t i = 0; i < slots(); ++i) {
      const std::int64_t e = lowest_ + static_cast<std::int64_t>(i);
      if (level_ == 1)
        r.sc_[i] = R.mul_int(sc_[i], e);
      else
        r.kids_[i] = kids_[i].times_int(e);
    }
  } else {
    for (auto& k : r.kids_) k = k.log_derivative(var);
  }
  r.normalize();
  return r;
}

Series Series::map_scalars(RingPtr target, const std::function<Scalar(const Scalar&)>& f) const {
  Series r = *this;
  r.ring_ = target;
  if (level_ == 0) {
    r.scalar_ = f(scalar_);
  } else if (level_ == 1) {
    for (auto& c : r.sc_) c = f(c);
  } else {
    for (auto& k : r.kids_) k = k.map_scalars(target, f);
  }
  r.normalize();
  return r;
}

Series Series::reduced() const {
  if (ring_->is_field()) return *this;
  const ScalarRing& R = ring_->scalars();
  return map_scalars(ring_->as_field(), [&R](const Scalar& c) { return R.reduce_mod_p(c); });
}

Series Series::lifted() const {
  if (!ring_->is_field()) return *this;
  return map_scalars(ring_->as_lift(), [](const Scalar& c) { return c; });
}

Series Series::rebased(RingPtr ring) const {
  if (!ring->same_as(*ring_)) throw TowerMismatch("rebased onto a different ring");
  Series r = map_scalars(std::move(ring), [](const Scalar& c) { return c; });
  if (r.level_ >= 1) r.normalize();
  return r;
}

void Series::for_each_term_rec(std::vector<std::int64_t>& exps,
                               const std::function<void(const std::vector<std::int64_t>&, const Scalar&)>& fn) const {
  if (level_ == 0) {
    if (nz_) fn(exps, scalar_);
    return;
  }
  for (std::size_t i = 0; i < slots(); ++i) {
    exps[level_ - 1] = lowest_ + static_cast<std::int64_t>(i);
    if (level_ == 1) {
      if (!ring_->scalars().is_zero(sc_[i])) fn(exps, sc_[i]);
    } else {
      kids_[i].for_each_term_rec(exps, fn);
    }
  }
}

void Series::for_each_term(const std::function<void(const std::vector<std::int64_t>&, const Scalar&)>& fn) const {
  std::vector<std::int64_t> exps(level_, 0);
  for_each_term_rec(exps, fn);
}

std::vector<Term> Series::terms() const {
  std::vector<Term> out;
  for_each_term([&](const std::vector<std::int64_t>& e, const Scalar& c) { out.push_back(Term{e, c}); });
  return out;
}

std::size_t Series::term_count() const {
  std::size_t n = 0;
  for_each_term([&](const std::vector<std::int64_t>&, const Scalar&) { ++n; });
  return n;
}

bool Series::identical(const Series& o) const {
  if (level_ != o.level_ || !ring_->same_as(*o.ring_)) return false;
  if (level_ == 0) return scalar_ == o.scalar_;
  if (ceiling_ != o.ceiling_ || slots() != o.slots()) return false;
  if (slots() && lowest_ != o.lowest_) return false;
  if (level_ == 1) return sc_ == o.sc_;
  for (std::size_t i = 0; i < kids_.size(); ++i)
    if (!kids_[i].identical(o.kids_[i])) return false;
  return true;
}

bool Series::congruent(const Series& o) const { return (*this - o).is_zero(); }

std::string Series::to_string() const { return render_series(*this); }

}  // namespace rswan
