#include "rswan/logdiff.hpp"

#include <algorithm>
#include <bit>

#include "rswan/error.hpp"

namespace rswan {

namespace {

int popcount(LogForm::Key k) { return std::popcount(k); }

// Sign of dlog_A ^ dlog_B against dlog_{A u B} with sorted indices.
int wedge_sign(LogForm::Key a, LogForm::Key b) {
  int inversions = 0;
  for (int i : LogForm::indices_of(a))
    for (int j : LogForm::indices_of(b))
      if (i > j) ++inversions;
  return (inversions % 2) ? -1 : 1;
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  for (LogForm::Key mask = 0; mask < (1u << n); ++mask)
    if (popcount(mask) == k) out.push_back(LogForm::indices_of(mask));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LogForm::LogForm(RingPtr ring, int nvars, int degree) : ring_(std::move(ring)), nvars_(nvars), degree_(degree) {
  if (nvars < 0 || nvars > ring_->dimension()) throw TowerMismatch("form level out of range");
  if (degree < 0 || degree > nvars) throw DegreeOverflow("form degree exceeds the number of variables");
}

LogForm LogForm::function(const Series& f) {
  LogForm w(f.ring(), f.level(), 0);
  w.accumulate(0, f);
  return w;
}

LogForm LogForm::basis(const Series& coeff, const std::vector<int>& indices) {
  std::vector<int> idx = indices;
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (idx[i] > idx[j]) sign = -sign;
  std::sort(idx.begin(), idx.end());
  LogForm w(coeff.ring(), coeff.level(), static_cast<int>(idx.size()));
  for (int i : idx)
    if (i < 0 || i >= coeff.level()) throw TowerMismatch("dlog index out of range");
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return w;
  w.accumulate(key_of(idx), sign > 0 ? coeff : -coeff);
  return w;
}

LogForm::Key LogForm::key_of(const std::vector<int>& sorted_indices) {
  Key k = 0;
  for (int i : sorted_indices) k |= (1u << i);
  return k;
}

std::vector<int> LogForm::indices_of(Key key) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (key & (1u << i)) out.push_back(i);
  return out;
}

Series LogForm::coefficient(Key key) const {
  auto it = coeffs_.find(key);
  if (it == coeffs_.end()) return Series::zero(ring_, nvars_);
  return it->second;
}

void LogForm::accumulate(Key key, const Series& c) {
  if (popcount(key) != degree_) throw DegreeMismatch("basis element of the wrong degree");
  if (c.level() != nvars_) throw TowerMismatch("coefficient at the wrong level");
  auto it = coeffs_.find(key);
  if (it == coeffs_.end()) {
    if (!c.is_exact_zero()) coeffs_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_exact_zero()) coeffs_.erase(it);
}

void LogForm::check_compatible(const LogForm& o) const {
  if (!ring_->same_as(*o.ring_) || nvars_ != o.nvars_) throw TowerMismatch("forms over different fields");
  if (degree_ != o.degree_) throw DegreeMismatch("forms of different degrees");
}

LogForm LogForm::operator+(const LogForm& o) const {
  check_compatible(o);
  LogForm r = *this;
  for (const auto& [k, c] : o.coeffs_) r.accumulate(k, c);
  return r;
}

LogForm LogForm::operator-() const {
  LogForm r = *this;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

LogForm LogForm::operator-(const LogForm& o) const { return *this + (-o); }

LogForm LogForm::operator*(const Series& f) const {
  LogForm r(ring_, nvars_, degree_);
  for (const auto& [k, c] : coeffs_) r.accumulate(k, c * f);
  return r;
}

bool LogForm::is_zero() const {
  for (const auto& [k, c] : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

LogForm LogForm::truncated(std::int64_t ceiling) const {
  LogForm r(ring_, nvars_, degree_);
  for (const auto& [k, c] : coeffs_) r.accumulate(k, c.truncated(ceiling));
  return r;
}

LogForm LogForm::window(std::int64_t lo, std::int64_t hi) const {
  LogForm r(ring_, nvars_, degree_);
  for (const auto& [k, c] : coeffs_) r.accumulate(k, c.window(lo, hi));
  return r;
}

std::int64_t LogForm::ord() const {
  std::int64_t best = Series::kExact;
  bool any = false;
  for (const auto& [k, c] : coeffs_) {
    if (c.is_zero()) continue;
    best = std::min(best, c.ord());
    any = true;
  }
  if (!any) throw ZeroInput("ord of the zero form");
  return best;
}

bool LogForm::congruent(const LogForm& o) const { return (*this - o).is_zero(); }

LogForm LogForm::reduced() const {
  LogForm r(ring_->as_field(), nvars_, degree_);
  for (const auto& [k, c] : coeffs_) r.accumulate(k, c.reduced());
  return r;
}

LogForm LogForm::lifted() const {
  LogForm r(ring_->as_lift(), nvars_, degree_);
  for (const auto& [k, c] : coeffs_) r.accumulate(k, c.lifted());
  return r;
}

std::vector<LogForm::Key> LogForm::canonical_keys() const {
  std::vector<Key> keys;
  for (const auto& [k, c] : coeffs_) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), [](Key a, Key b) { return indices_of(a) < indices_of(b); });
  return keys;
}

WindowedForm WindowedForm::canonical() const { return WindowedForm{form.truncated(-m), n, m}; }

bool WindowedForm::congruent(const WindowedForm& o) const {
  if (n != o.n || m != o.m) return false;
  return canonical().form.congruent(o.canonical().form);
}

LogForm d(const LogForm& w) {
  if (w.degree() >= w.nvars()) throw DegreeOverflow("d of a top-degree form");
  LogForm r(w.ring(), w.nvars(), w.degree() + 1);
  for (const auto& [key, f] : w.coefficients()) {
    for (int l = 0; l < w.nvars(); ++l) {
      const LogForm::Key bit = 1u << l;
      if (key & bit) continue;
      Series g = f.log_derivative(l);
      if (g.is_exact_zero()) continue;
      r.accumulate(key | bit, wedge_sign(bit, key) > 0 ? g : -g);
    }
  }
  return r;
}

LogForm d(const Series& f) { return d(LogForm::function(f)); }

LogForm wedge(const LogForm& a, const LogForm& b) {
  if (!a.ring()->same_as(*b.ring()) || a.nvars() != b.nvars()) throw TowerMismatch("wedge of forms over different fields");
  if (a.degree() + b.degree() > a.nvars()) throw DegreeOverflow("wedge degree exceeds the number of variables");
  LogForm r(a.ring(), a.nvars(), a.degree() + b.degree());
  for (const auto& [ka, ca] : a.coefficients()) {
    for (const auto& [kb, cb] : b.coefficients()) {
      if (ka & kb) continue;
      Series c = ca * cb;
      r.accumulate(ka | kb, wedge_sign(ka, kb) > 0 ? c : -c);
    }
  }
  return r;
}

LogForm dlog(const Series& y) {
  const Series inv = y.inverse();
  LogForm r(y.ring(), y.level(), 1);
  for (int l = 0; l < y.level(); ++l) r.accumulate(1u << l, y.log_derivative(l) * inv);
  return r;
}

LogForm cartier(const LogForm& w) {
  if (!w.is_top()) throw NotTopDegree("Cartier operator needs a top-degree form");
  LogForm r(w.ring(), w.nvars(), w.degree());
  const LogForm::Key top = LogForm::top_key(w.nvars());
  r.accumulate(top, w.coefficient(top).cartier());
  return r;
}

LogForm residue_step(const LogForm& w) {
  if (!w.is_top()) throw NotTopDegree("residue needs a top-degree form");
  if (w.nvars() == 0) throw NotTopDegree("residue of a form over the constant field");
  const int nv = w.nvars() - 1;
  LogForm r(w.ring(), nv, nv);
  r.accumulate(LogForm::top_key(nv), w.coefficient(LogForm::top_key(w.nvars())).coeff(0));
  return r;
}

std::int64_t residue_to_base(const LogForm& w) {
  if (!w.is_top()) throw NotTopDegree("residue needs a top-degree form");
  LogForm cur = w;
  while (cur.nvars() > 0) cur = residue_step(cur);
  return w.ring()->scalars().trace(cur.coefficient(0).scalar());
}

std::int64_t residue_to_prime_field(const LogForm& w) {
  if (!w.ring()->is_field()) throw TowerMismatch("residue_to_prime_field needs a form over the field");
  return residue_to_base(w);
}

LogForm r_b(const WindowedForm& x, int b) {
  if (!x.form.is_top()) throw NotTopDegree("R_b needs a top-degree form");
  if (x.m > -1) throw WindowTooWide("R_b needs a class modulo m_K (window m <= -1)");
  const std::int64_t a = x.n + 1;
  if (a < 1) throw WindowTooWide("empty window for R_b");
  std::int64_t pb = 1;
  for (int i = 0; i < b; ++i) pb *= x.form.ring()->prime();
  if (pb < a) throw WindowTooWide("p^b = " + std::to_string(pb) + " < a = " + std::to_string(a));
  LogForm w = residue_step(x.form.truncated(1));
  for (int i = 0; i < b; ++i) w = cartier(w);
  return w;
}

DualityMatrix duality_matrix(std::int64_t n, std::int64_t m, int b, const RingPtr& K, int i, int j) {
  const int d = K->dimension();
  const int r = d - 1;
  if (i + j != d) throw DegreeMismatch("pairing degrees must add up to " + std::to_string(d));
  if (i < 0 || j < 0) throw DegreeMismatch("negative form degree");
  const std::int64_t a = n - m;
  if (a < 1) throw WindowTooWide("empty window");
  std::int64_t pb = 1;
  for (int t = 0; t < b; ++t) pb *= K->prime();
  if (pb < a) throw WindowTooWide("p^b < n - m");

  // Multi-exponents c in [0, p^b)^r for the inner variables.
  std::vector<std::vector<std::int64_t>> inner{{}};
  for (int v = 0; v < r; ++v) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& c : inner)
      for (std::int64_t e = 0; e < pb; ++e) {
        auto cc = c;
        cc.push_back(e);
        next.push_back(cc);
      }
    inner = std::move(next);
  }
  auto make_basis = [&](std::int64_t lo, std::int64_t hi, int deg) {
    std::vector<PairingBasisElement> out;
    for (std::int64_t k = lo; k <= hi; ++k)
      for (const auto& S : subsets_of_size(d, deg))
        for (const auto& c : inner) {
          auto exps = c;
          exps.push_back(k);
          out.push_back({exps, LogForm::key_of(S)});
        }
    return out;
  };
  DualityMatrix M;
  M.b = b;
  M.left = make_basis(-n, -m - 1, j);
  M.right = make_basis(m + 1, n, i);
  const Scalar one = K->scalars().one();
  auto as_form = [&](const PairingBasisElement& e, int deg) {
    LogForm w(K, d, deg);
    w.accumulate(e.key, Series::monomial(K, one, e.exps));
    return w;
  };
  const LogForm::Key top_f = LogForm::top_key(r);
  for (const auto& x : M.left) {
    std::vector<Series> row;
    const LogForm fx = as_form(x, j);
    for (const auto& y : M.right) {
      const LogForm prod = wedge(fx, as_form(y, i));
      const LogForm val = r_b(WindowedForm{prod, a - 1, -1}, b);
      row.push_back(val.coefficient(top_f));
    }
    M.entries.push_back(std::move(row));
  }
  return M;
}

std::size_t matrix_rank(std::vector<std::vector<Series>> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rows.size();
    std::int64_t best = Series::kExact;
    bool ambiguous = false;
    for (std::size_t rr = rank; rr < rows.size(); ++rr) {
      const Series& e = rows[rr][col];
      if (e.is_zero()) {
        if (!e.is_exact()) ambiguous = true;
        continue;
      }
      const std::int64_t o = e.level() == 0 ? 0 : e.ord_bound();
      if (pivot == rows.size() || o < best) {
        pivot = rr;
        best = o;
      }
    }
    if (pivot == rows.size()) {
      if (ambiguous) throw PrecisionExhausted("pivot undetermined at window precision");
      continue;
    }
    std::swap(rows[rank], rows[pivot]);
    const Series inv = rows[rank][col].inverse();
    for (std::size_t rr = rank + 1; rr < rows.size(); ++rr) {
      if (rows[rr][col].is_exact_zero()) continue;
      const Series factor = rows[rr][col] * inv;
      for (std::size_t c = col; c < cols; ++c) rows[rr][c] = rows[rr][c] - factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

bool is_invertible(const std::vector<std::vector<Series>>& rows) {
  if (rows.empty()) return true;
  if (rows.size() != rows[0].size()) return false;
  return matrix_rank(rows) == rows.size();
}

LogForm pullback_form(const LogForm& w, const std::vector<Series>& images) {
  if (images.empty()) throw TowerMismatch("pullback needs images");
  if (static_cast<int>(images.size()) != w.nvars()) throw TowerMismatch("pullback needs one image per variable");
  const RingPtr& target = images.front().ring();
  const int tv = target->dimension();
  std::vector<LogForm> dlogs;
  for (const auto& img : images) dlogs.push_back(dlog(img));
  LogForm r(target, tv, w.degree());
  for (const auto& [key, c] : w.coefficients()) {
    LogForm term = LogForm::function(c.substitute(images));
    for (int idx : LogForm::indices_of(key)) term = wedge(term, dlogs[idx]);
    r = r + term;
  }
  return r;
}

}  // namespace rswan
