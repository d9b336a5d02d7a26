#include <algorithm>

#include "rswan/error.hpp"
#include "rswan/series.hpp"

namespace rswan {

namespace {

struct Partial {
  Series value;
  // Lower bound for the target valuation of the unknown remainder.
  std::int64_t remainder_bound = Series::kExact;
};

class Substitution {
 public:
  Substitution(const RingPtr& target, const std::vector<Series>& images) : target_(target), images_(images) {
    top_ords_.assign(images.size(), 0);
    known_.assign(images.size(), false);
  }

  Partial run(const Series& x) {
    if (x.level() == 0) {
      return {Series::constant(target_, x.scalar(), target_->dimension()), Series::kExact};
    }
    const int L = x.level();
    const Series& img = images_[L - 1];
    Partial out{Series::zero(target_), Series::kExact};
    if (x.ceiling() < Series::kExact) out.remainder_bound = remainder_bound(L, x.ceiling());
    if (x.slots() == 0) return out;

    const std::int64_t e = top_ord(L);
    Series power = img.pow(x.lowest());
    bool first = true;
    for (std::size_t i = 0; i < x.slots(); ++i) {
      const std::int64_t j = x.lowest() + static_cast<std::int64_t>(i);
      if (!first) power = power * img;
      first = false;
      const Series kid = x.coeff(j);
      if (kid.is_exact_zero()) continue;
      Partial inner = run(kid);
      out.value += inner.value * power;
      if (inner.remainder_bound < Series::kExact)
        out.remainder_bound = std::min(out.remainder_bound, sat_add(inner.remainder_bound, sat_mul(j, e)));
    }
    return out;
  }

 private:
  std::int64_t top_ord(int level) {
    const std::size_t i = static_cast<std::size_t>(level - 1);
    if (!known_[i]) {
      const Series& img = images_[i];
      if (img.is_zero()) throw NonEmbedding("image of " + target_var(level) + " is zero");
      top_ords_[i] = img.ord();
      known_[i] = true;
    }
    return top_ords_[i];
  }

  std::string target_var(int level) const { return "variable " + std::to_string(level); }

  // A remainder sum_{j >= C} c_j img^j is controlled only when the image of
  // this variable has nonnegative target valuation and every inner image is
  // integral for the target uniformizer.
  std::int64_t remainder_bound(int level, std::int64_t ceiling) {
    for (int l = 1; l <= level; ++l) {
      const std::int64_t e = top_ord(l);
      if (e < 0 || (l < level && e != 0) || (l == level && level == static_cast<int>(images_.size()) && e < 1))
        throw NonEmbedding("substituting an inexact series needs a valuation-compatible embedding");
    }
    return sat_mul(top_ord(level), ceiling);
  }

  RingPtr target_;
  const std::vector<Series>& images_;
  std::vector<std::int64_t> top_ords_;
  std::vector<bool> known_;
};

}  // namespace

Series Series::substitute(const std::vector<Series>& images) const {
  if (static_cast<int>(images.size()) != level_) throw TowerMismatch("substitute needs one image per variable");
  if (level_ == 0) throw TowerMismatch("substitute into a scalar");
  const RingPtr target = images.front().ring();
  for (const auto& img : images) {
    if (!img.ring()->same_as(*target) || img.level() != target->dimension())
      throw TowerMismatch("substitution images must be top-level series of one ring");
  }
  if (target->scalars().degree() != ring_->scalars().degree() || target->prime() != ring_->prime() ||
      target->scalars().exponent() != ring_->scalars().exponent())
    throw TowerMismatch("substitution between different coefficient rings");

  bool identity = target->same_as(*ring_) && level_ == ring_->dimension();
  for (int l = 0; identity && l < level_; ++l)
    identity = images[l].identical(Series::variable(target, l));
  if (identity) return *this;

  Substitution sub(target, images);
  Partial out = sub.run(*this);
  if (out.remainder_bound < kExact) return out.value.truncated(out.remainder_bound);
  return out.value;
}

}  // namespace rswan
