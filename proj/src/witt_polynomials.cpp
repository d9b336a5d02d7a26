#include "rswan/witt_polynomials.hpp"

#include <memory>
#include <mutex>

#include "rswan/error.hpp"

namespace rswan {

namespace {

std::int64_t mod(std::int64_t v, std::int64_t m) {
  v %= m;
  return v < 0 ? v + m : v;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Given ghost targets G_0..G_{s-1} (G_n known mod p^{n+1}), solves
// sum_{i<=n} p^i S_i^{p^{n-i}} = G_n for S_n mod p. Only S_i mod p enters
// p^i S_i^{p^{n-i}} mod p^{n+1}, so every step stays in Z/p^{n+1}.
std::vector<IntPoly> solve_ghost(int p, int s, const std::vector<IntPoly>& ghost) {
  std::vector<IntPoly> S;
  for (int n = 0; n < s; ++n) {
    const std::int64_t M = ipow(p, n + 1);
    IntPoly num = ghost[n];
    for (int i = 0; i < n; ++i) {
      IntPoly t = S[i].pow(static_cast<std::uint64_t>(ipow(p, n - i)), M).scale(ipow(p, i), M);
      num = num.add(t.scale(M - 1, M), M);
    }
    IntPoly out;
    const std::int64_t pn = ipow(p, n);
    for (const auto& [e, c] : num.terms) {
      if (c % pn != 0) throw InconsistentValue("Witt polynomial is not integral");
      const std::int64_t v = mod(c / pn, p);
      if (v) out.terms[e] = v;
    }
    S.push_back(std::move(out));
  }
  return S;
}

// w_n(X) = sum_{i<=n} p^i X_{offset+i}^{p^{n-i}} mod p^{n+1}.
IntPoly ghost_component(int p, int n, int offset) {
  const std::int64_t M = ipow(p, n + 1);
  IntPoly w;
  for (int i = 0; i <= n; ++i)
    w = w.add(IntPoly::variable(offset + i).pow(static_cast<std::uint64_t>(ipow(p, n - i)), M).scale(ipow(p, i), M), M);
  return w;
}

}  // namespace

IntPoly IntPoly::variable(int index) {
  IntPoly r;
  Exponents e{};
  e[index] = 1;
  r.terms[e] = 1;
  return r;
}

IntPoly IntPoly::constant(std::int64_t c) {
  IntPoly r;
  if (c) r.terms[Exponents{}] = c;
  return r;
}

IntPoly IntPoly::add(const IntPoly& o, std::int64_t modulus) const {
  IntPoly r = *this;
  for (const auto& [e, c] : o.terms) {
    std::int64_t v = mod(r.terms[e] + c, modulus);
    if (v)
      r.terms[e] = v;
    else
      r.terms.erase(e);
  }
  return r;
}

IntPoly IntPoly::scale(std::int64_t c, std::int64_t modulus) const {
  IntPoly r;
  for (const auto& [e, v] : terms) {
    const std::int64_t x = mod(v * c, modulus);
    if (x) r.terms[e] = x;
  }
  return r;
}

IntPoly IntPoly::mul(const IntPoly& o, std::int64_t modulus) const {
  IntPoly r;
  for (const auto& [ea, ca] : terms)
    for (const auto& [eb, cb] : o.terms) {
      Exponents e;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      std::int64_t& slot = r.terms[e];
      slot = mod(slot + ca * cb, modulus);
    }
  for (auto it = r.terms.begin(); it != r.terms.end();) it = it->second ? std::next(it) : r.terms.erase(it);
  return r;
}

IntPoly IntPoly::pow(std::uint64_t n, std::int64_t modulus) const {
  IntPoly result = constant(1);
  IntPoly base = *this;
  while (n) {
    if (n & 1) result = result.mul(base, modulus);
    n >>= 1;
    if (n) base = base.mul(base, modulus);
  }
  return result;
}

WittPolynomials::WittPolynomials(int p, int s) : p_(p), s_(s) {
  if (s < 1 || s > 4) throw Unsupported("Witt length must be between 1 and 4");
  std::vector<IntPoly> sum_ghost, neg_ghost;
  for (int n = 0; n < s; ++n) {
    const std::int64_t M = ipow(p, n + 1);
    const IntPoly wx = ghost_component(p, n, 0);
    sum_ghost.push_back(wx.add(ghost_component(p, n, s), M));
    neg_ghost.push_back(wx.scale(M - 1, M));
  }
  sum_ = solve_ghost(p, s, sum_ghost);
  neg_ = solve_ghost(p, s, neg_ghost);
}

const WittPolynomials& WittPolynomials::get(int p, int s) {
  static std::mutex guard;
  static std::map<std::pair<int, int>, std::unique_ptr<WittPolynomials>> cache;
  std::lock_guard<std::mutex> lock(guard);
  auto& slot = cache[{p, s}];
  if (!slot) slot = std::make_unique<WittPolynomials>(p, s);
  return *slot;
}

Series evaluate(const IntPoly& poly, const std::vector<Series>& vars) {
  if (vars.empty()) throw TowerMismatch("evaluate needs at least one value");
  const RingPtr& ring = vars.front().ring();
  const int level = vars.front().level();
  std::vector<std::map<std::uint16_t, Series>> powers(vars.size());
  auto power = [&](std::size_t i, std::uint16_t e) -> const Series& {
    auto& cache = powers[i];
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    return cache.emplace(e, vars[i].pow(e)).first->second;
  };
  Series total = Series::zero(ring, level);
  for (const auto& [exps, c] : poly.terms) {
    bool vanishes = false;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (exps[i] && vars[i].is_exact_zero()) vanishes = true;
    for (std::size_t i = vars.size(); i < exps.size(); ++i)
      if (exps[i]) throw TowerMismatch("polynomial uses more variables than supplied");
    if (vanishes) continue;
    Series term = Series::from_int(ring, c, level);
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (exps[i]) term = term * power(i, exps[i]);
    total += term;
  }
  return total;
}

}  // namespace rswan
