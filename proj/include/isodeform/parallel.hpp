#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace isodeform {

enum class Exec { serial, parallel };

/// Thread count from ISODEFORM_THREADS, falling back to the OpenMP default.
inline int thread_count() {
  if (const char* env = std::getenv("ISODEFORM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Calls fn(i) for i in [0, n). Writes must go to disjoint slots. The first exception
/// thrown by any index (lowest index wins) is rethrown after the loop.
template <class Fn>
void for_each_index(long n, Fn&& fn, Exec exec = Exec::parallel) {
  if (exec == Exec::serial || n < 2) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first;
  long first_index = n;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
  for (long i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (i < first_index) {
        first_index = i;
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace isodeform
