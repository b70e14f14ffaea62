#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fpt {

/// Kernels come in two flavours: an OpenMP-parallel one used in production
/// and a plain serial loop kept as the reference the tests compare against.
enum class Execution { serial, parallel };

/// Thread cap: FPT_ORDER_THREADS when set to a positive integer, otherwise
/// the OpenMP default.
int max_threads();

/// Calls body(i) for i in [0, n). Iterations must be independent; their
/// results are expected to be written to distinct slots. The first exception
/// thrown by any iteration is rethrown on the calling thread.
template <class Body>
void for_each_index(Execution exec, std::size_t n, Body&& body) {
  if (exec == Execution::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const long count = static_cast<long>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
#endif
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// values[i] = f(points[i]).
template <class F>
std::vector<double> map_points(Execution exec, const std::vector<double>& points,
                               F&& f) {
  std::vector<double> values(points.size());
  for_each_index(exec, points.size(), [&](std::size_t i) { values[i] = f(points[i]); });
  return values;
}

}  // namespace fpt
