#include <algorithm>
#include <exception>

#include "rswan/error.hpp"
#include "rswan/series.hpp"

#ifdef RSWAN_HAVE_OPENMP
#include <omp.h>
#endif

namespace rswan {

namespace {

// Below this many coefficient products the thread start-up dominates.
constexpr std::int64_t kParallelWork = 4096;

}  // namespace

Series::Plan Series::plan_product(const Series& a, const Series& b) {
  Plan plan{0, kExact, 0, true};
  if (a.is_exact_zero() || b.is_exact_zero()) return plan;
  plan.ceiling = std::min(sat_add(a.ceiling_, b.ord_bound()), sat_add(b.ceiling_, a.ord_bound()));
  if (a.slots() == 0 || b.slots() == 0) return plan;
  plan.empty = false;
  plan.lowest = a.lowest_ + b.lowest_;
  plan.count = static_cast<std::int64_t>(a.slots() + b.slots()) - 1;
  if (plan.ceiling < kExact) {
    const std::int64_t budget = a.ring_->precision();
    plan.ceiling = std::min(plan.ceiling, plan.lowest + budget);
    plan.count = std::min(plan.count, plan.ceiling - plan.lowest);
  }
  return plan;
}

void Series::product_slot(const Series& a, const Series& b, std::int64_t k, Series& out_kid, Scalar& out_scalar) {
  const std::int64_t na = static_cast<std::int64_t>(a.slots());
  const std::int64_t nb = static_cast<std::int64_t>(b.slots());
  const std::int64_t i0 = std::max<std::int64_t>(0, k - (nb - 1));
  const std::int64_t i1 = std::min(k, na - 1);
  if (a.level_ == 1) {
    const ScalarRing& R = a.ring_->scalars();
    Scalar acc{};
    for (std::int64_t i = i0; i <= i1; ++i) {
      const Scalar& x = a.sc_[i];
      const Scalar& y = b.sc_[k - i];
      if (R.is_zero(x) || R.is_zero(y)) continue;
      acc = R.add(acc, R.mul(x, y));
    }
    out_scalar = acc;
    return;
  }
  Series acc = zero(a.ring_, a.level_ - 1);
  for (std::int64_t i = i0; i <= i1; ++i) {
    const Series& x = a.kids_[i];
    const Series& y = b.kids_[k - i];
    if (x.is_exact_zero() || y.is_exact_zero()) continue;
    Series prod = multiply_serial(x, y);
    acc = acc.is_exact_zero() ? std::move(prod) : acc + prod;
  }
  out_kid = std::move(acc);
}

Series multiply_serial(const Series& a, const Series& b) {
  a.check_compatible(b);
  if (a.level_ == 0) return a * b;
  const Series::Plan plan = Series::plan_product(a, b);
  Series r = a.empty_like(plan.ceiling);
  if (plan.empty) {
    r.normalize();
    return r;
  }
  r.lowest_ = plan.lowest;
  Scalar scratch{};
  if (a.level_ == 1) {
    r.sc_.assign(plan.count, Scalar{});
    Series unused;
    for (std::int64_t k = 0; k < plan.count; ++k) Series::product_slot(a, b, k, unused, r.sc_[k]);
  } else {
    r.kids_.assign(plan.count, Series());
    for (std::int64_t k = 0; k < plan.count; ++k) Series::product_slot(a, b, k, r.kids_[k], scratch);
  }
  r.normalize();
  return r;
}

Series multiply_parallel(const Series& a, const Series& b) {
  a.check_compatible(b);
  if (a.level_ == 0) return a * b;
  const Series::Plan plan = Series::plan_product(a, b);
  if (plan.empty) return multiply_serial(a, b);
  const std::int64_t work = static_cast<std::int64_t>(a.slots()) * static_cast<std::int64_t>(b.slots()) *
                            (a.level_ == 1 ? 1 : static_cast<std::int64_t>(a.ring_->precision()));
#ifdef RSWAN_HAVE_OPENMP
  if (work < kParallelWork || omp_in_parallel() || omp_get_max_threads() < 2) return multiply_serial(a, b);
  Series r = a.empty_like(plan.ceiling);
  r.lowest_ = plan.lowest;
  std::vector<Series> kids(plan.count);
  std::vector<Scalar> scalars(plan.count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t k = 0; k < plan.count; ++k) {
    try {
      Series::product_slot(a, b, k, kids[k], scalars[k]);
    } catch (...) {
#pragma omp critical(rswan_mul_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  if (a.level_ == 1)
    r.sc_ = std::move(scalars);
  else
    r.kids_ = std::move(kids);
  r.normalize();
  return r;
#else
  (void)work;
  return multiply_serial(a, b);
#endif
}

}  // namespace rswan
