#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#if RSWAN_HAVE_OPENMP
#include <omp.h>
#endif

namespace rswan {

/// Runs fn(i) for i in [0, n), in parallel when OpenMP is available and we
/// are not already inside a parallel region. The first failure (by index) is
/// rethrown after the loop.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::vector<std::exception_ptr> failures(n);
#if RSWAN_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (!omp_in_parallel() && n > 1)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
}

}  // namespace rswan
