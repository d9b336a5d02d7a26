#include "rswan/tower.hpp"

#include <cctype>
#include <set>

#include "rswan/error.hpp"

namespace rswan {

void FieldTower::validate() const {
  if (p != 2 && p != 3 && p != 5) throw ConfigError("p must be 2, 3 or 5");
  if (k < 1 || k > 4) throw ConfigError("k must be between 1 and 4");
  if (s < 1 || s > 4) throw ConfigError("Witt length s must be between 1 and 4");
  if (variables.empty() || variables.size() > 4)
    throw ConfigError("a tower needs between 1 and 4 variables");
  if (precision < 1) throw ConfigError("precision must be positive");
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (v.empty() || v == "g" || v == "dlog" || v == "window")
      throw ConfigError("invalid variable name '" + v + "'");
    for (char ch : v)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
        throw ConfigError("invalid variable name '" + v + "'");
    if (std::isdigit(static_cast<unsigned char>(v[0])))
      throw ConfigError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw ConfigError("duplicate variable '" + v + "'");
  }
}

int FieldTower::variable_index(const std::string& name) const {
  for (int i = 0; i < dimension(); ++i)
    if (variables[i] == name) return i;
  throw UnknownVariable("unknown variable '" + name + "'");
}

Ring::Ring(FieldTower tower, int exponent)
    : tower_(std::move(tower)), scalars_(tower_.p, tower_.k, exponent) {}

RingPtr Ring::field(const FieldTower& tower) {
  tower.validate();
  return RingPtr(new Ring(tower, 1));
}

RingPtr Ring::lift(const FieldTower& tower) {
  tower.validate();
  return RingPtr(new Ring(tower, tower.s));
}

RingPtr Ring::with_precision(int precision) const {
  FieldTower t = tower_;
  t.precision = precision;
  t.validate();
  return RingPtr(new Ring(t, scalars_.exponent()));
}

bool Ring::same_as(const Ring& other) const {
  return this == &other ||
         (tower_.p == other.tower_.p && tower_.k == other.tower_.k &&
          scalars_.exponent() == other.scalars_.exponent() &&
          tower_.variables == other.tower_.variables);
}

}  // namespace rswan
