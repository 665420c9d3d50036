#pragma once

// Data-parallel kernels in this project are written as "map each index to a
// value, then reduce the values serially in index order". The map runs either
// serially or on an OpenMP team; because the reduction order never changes,
// both paths produce bitwise-identical results for any thread count.

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sine_moments {

enum class Execution { serial, parallel };

/// Sets the OpenMP team size used by Execution::parallel. Values < 1 are ignored.
void set_thread_count(int threads);
int thread_count();

/// Returns {f(0), ..., f(n-1)}. With Execution::parallel the calls are spread
/// over the OpenMP team; the first exception thrown by any call is rethrown.
template <class R, class F>
std::vector<R> map_indexed(std::size_t n, Execution exec, F&& f) {
  std::vector<R> out(n);
  if (exec == Execution::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace sine_moments
