#include "rswan/scalar.hpp"

#include "rswan/error.hpp"

namespace rswan {

std::vector<int> conway_polynomial(int p, int k) {
  // Coefficients low -> high, monic.
  switch (p) {
    case 2:
      switch (k) {
        case 1: return {1, 1};
        case 2: return {1, 1, 1};
        case 3: return {1, 1, 0, 1};
        case 4: return {1, 1, 0, 0, 1};
      }
      break;
    case 3:
      switch (k) {
        case 1: return {1, 1};
        case 2: return {2, 2, 1};
        case 3: return {1, 2, 0, 1};
        case 4: return {2, 0, 0, 2, 1};
      }
      break;
    case 5:
      switch (k) {
        case 1: return {3, 1};
        case 2: return {2, 4, 1};
        case 3: return {3, 3, 0, 1};
        case 4: return {2, 4, 4, 0, 1};
      }
      break;
  }
  throw Unsupported("no defining polynomial for p=" + std::to_string(p) +
                    ", k=" + std::to_string(k));
}

ScalarRing::ScalarRing(int p, int k, int e) : p_(p), k_(k), e_(e) {
  if (e < 1 || e > 6) throw Unsupported("Galois ring exponent out of range");
  poly_ = conway_polynomial(p, k);
  modulus_ = 1;
  for (int i = 0; i < e; ++i) modulus_ *= p;
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= p;
}

Scalar ScalarRing::from_int(std::int64_t v) const {
  Scalar r;
  r.c[0] = static_cast<std::int32_t>(reduce(v));
  return r;
}

Scalar ScalarRing::generator() const {
  if (k_ == 1) return from_int(-poly_[0]);
  Scalar r;
  r.c[1] = 1;
  return r;
}

Scalar ScalarRing::from_coefficients(const std::vector<std::int64_t>& coeffs) const {
  // Reduce a polynomial of arbitrary degree in g.
  std::vector<std::int64_t> work(coeffs.begin(), coeffs.end());
  for (auto& v : work) v = reduce(v);
  for (int i = static_cast<int>(work.size()) - 1; i >= k_; --i) {
    std::int64_t t = work[i];
    if (t == 0) continue;
    work[i] = 0;
    for (int j = 0; j < k_; ++j) work[i - k_ + j] = reduce(work[i - k_ + j] - t * poly_[j]);
  }
  Scalar r;
  for (int i = 0; i < k_ && i < static_cast<int>(work.size()); ++i)
    r.c[i] = static_cast<std::int32_t>(work[i]);
  return r;
}

Scalar ScalarRing::add(const Scalar& a, const Scalar& b) const {
  Scalar r;
  for (int i = 0; i < k_; ++i) {
    std::int64_t v = std::int64_t{a.c[i]} + b.c[i];
    if (v >= modulus_) v -= modulus_;
    r.c[i] = static_cast<std::int32_t>(v);
  }
  return r;
}

Scalar ScalarRing::sub(const Scalar& a, const Scalar& b) const {
  Scalar r;
  for (int i = 0; i < k_; ++i) {
    std::int64_t v = std::int64_t{a.c[i]} - b.c[i];
    if (v < 0) v += modulus_;
    r.c[i] = static_cast<std::int32_t>(v);
  }
  return r;
}

Scalar ScalarRing::neg(const Scalar& a) const { return sub(Scalar{}, a); }

Scalar ScalarRing::mul(const Scalar& a, const Scalar& b) const {
  if (k_ == 1) {
    Scalar r;
    r.c[0] = static_cast<std::int32_t>((std::int64_t{a.c[0]} * b.c[0]) % modulus_);
    return r;
  }
  std::array<std::int64_t, 2 * kMaxDegree> prod{};
  for (int i = 0; i < k_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < k_; ++j) prod[i + j] += std::int64_t{a.c[i]} * b.c[j];
  }
  for (int i = 2 * k_ - 2; i >= k_; --i) {
    std::int64_t t = prod[i] % modulus_;
    if (t == 0) continue;
    for (int j = 0; j < k_; ++j) prod[i - k_ + j] -= t * poly_[j];
  }
  Scalar r;
  for (int i = 0; i < k_; ++i) r.c[i] = static_cast<std::int32_t>(reduce(prod[i]));
  return r;
}

Scalar ScalarRing::mul_int(const Scalar& a, std::int64_t v) const {
  v = reduce(v);
  Scalar r;
  for (int i = 0; i < k_; ++i) r.c[i] = static_cast<std::int32_t>((a.c[i] * v) % modulus_);
  return r;
}

Scalar ScalarRing::pow(Scalar a, std::uint64_t n) const {
  Scalar r = one();
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

bool ScalarRing::is_unit(const Scalar& a) const {
  for (int i = 0; i < k_; ++i)
    if (a.c[i] % p_ != 0) return true;
  return false;
}

Scalar ScalarRing::inv(const Scalar& a) const {
  if (!is_unit(a)) throw ZeroInput("inverse of a non-unit scalar");
  // a^{q-2} inverts a modulo p; Newton iteration lifts to Z/p^e.
  Scalar x = pow(a, static_cast<std::uint64_t>(q_ - 2));
  const Scalar two = from_int(2);
  for (int lifted = 1; lifted < e_; lifted *= 2) x = mul(x, sub(two, mul(a, x)));
  if (!is_one(mul(a, x))) throw InconsistentValue("scalar inverse failed to converge");
  return x;
}

Scalar ScalarRing::frobenius(const Scalar& a) const { return pow(a, static_cast<std::uint64_t>(p_)); }

Scalar ScalarRing::pth_root(const Scalar& a) const {
  return pow(a, static_cast<std::uint64_t>(q_ / p_));
}

std::int64_t ScalarRing::trace(const Scalar& a) const {
  // Trace of multiplication by a on the basis 1, g, ..., g^{k-1}.
  std::int64_t t = 0;
  Scalar basis = one();
  Scalar g;
  if (k_ > 1) g.c[1] = 1;
  for (int i = 0; i < k_; ++i) {
    t += mul(a, basis).c[i];
    if (k_ > 1) basis = mul(basis, g);
  }
  return reduce(t);
}

Scalar ScalarRing::reduce_mod_p(const Scalar& a) const {
  Scalar r;
  for (int i = 0; i < k_; ++i) r.c[i] = a.c[i] % p_;
  return r;
}

std::int64_t ScalarRing::encode(const Scalar& a) const {
  std::int64_t code = 0;
  for (int i = k_ - 1; i >= 0; --i) code = code * modulus_ + a.c[i];
  return code;
}

Scalar ScalarRing::decode(std::int64_t code) const {
  Scalar r;
  for (int i = 0; i < k_; ++i) {
    r.c[i] = static_cast<std::int32_t>(code % modulus_);
    code /= modulus_;
  }
  return r;
}

}  // namespace rswan
