#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rswan/parse.hpp"
#include "rswan/run.hpp"
#include "rswan/tower.hpp"
#include "rswan/witt.hpp"

namespace testing {

inline rswan::RingPtr field(int p, std::vector<std::string> vars = {"t"}, int s = 1, int k = 1, int precision = 64) {
  rswan::FieldTower t;
  t.p = p;
  t.k = k;
  t.s = s;
  t.variables = std::move(vars);
  t.precision = precision;
  return rswan::Ring::field(t);
}

inline rswan::Series S(const rswan::RingPtr& ring, const std::string& text) { return rswan::parse_series(text, ring); }

/// Witt vector from components written in print order (a_{s-1}, ..., a_0).
inline rswan::WittVector W(const rswan::RingPtr& ring, const std::vector<std::string>& printed) {
  std::vector<rswan::Series> xs;
  for (const auto& s : printed) xs.push_back(S(ring, s));
  return rswan::WittVector::from_print_order(ring, std::move(xs));
}

/// Random exact Laurent polynomial: outer exponents in [lo, hi], inner
/// exponents in [ilo, ihi], each monomial present with probability 1/2.
inline rswan::Series random_poly(const rswan::RingPtr& ring, std::mt19937_64& rng, std::int64_t lo, std::int64_t hi,
                                 std::int64_t ilo = 0, std::int64_t ihi = 1) {
  const int d = ring->dimension();
  const auto& F = ring->scalars();
  rswan::Series out = rswan::Series::zero(ring);
  std::uniform_int_distribution<std::int64_t> coin(0, 1), code(1, F.residue_size() - 1);
  std::vector<std::int64_t> e(static_cast<std::size_t>(d), 0);
  auto rec = [&](auto&& self, int level) -> void {
    if (level == d - 1) {
      for (std::int64_t k = lo; k <= hi; ++k) {
        e[static_cast<std::size_t>(level)] = k;
        if (coin(rng)) out = out + rswan::Series::monomial(ring, F.decode(code(rng)), e);
      }
      return;
    }
    for (std::int64_t k = ilo; k <= ihi; ++k) {
      e[static_cast<std::size_t>(level)] = k;
      self(self, level + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline rswan::WittVector random_witt(const rswan::RingPtr& ring, std::mt19937_64& rng, std::int64_t lo, std::int64_t hi,
                                     std::int64_t ilo = 0, std::int64_t ihi = 1) {
  std::vector<rswan::Series> comps;
  for (int i = 0; i < ring->tower().s; ++i) comps.push_back(random_poly(ring, rng, lo, hi, ilo, ihi));
  return rswan::WittVector(ring, std::move(comps));
}

/// (F - 1) b
inline rswan::WittVector as_coboundary(const rswan::WittVector& b) {
  return rswan::witt_sub(rswan::witt_frobenius(b), b);
}

struct NamedCharacter {
  std::string name;
  rswan::WittVector rep;
};

/// Every character of the canned catalog for p, built from its literals.
inline std::vector<NamedCharacter> catalog_characters(int p) {
  const rswan::Json cfg = rswan::catalog_config(p);
  std::vector<NamedCharacter> out;
  for (const auto& [name, j] : cfg.at("characters").items()) {
    const auto& tj = cfg.at("towers").at(j.at("tower").get<std::string>());
    const rswan::RingPtr ring =
        field(tj.at("p").get<int>(), tj.at("variables").get<std::vector<std::string>>(), tj.value("s", 1),
              tj.value("k", 1), tj.value("precision", 64));
    out.push_back({name, W(ring, j.at("components").get<std::vector<std::string>>())});
  }
  return out;
}

}  // namespace testing
