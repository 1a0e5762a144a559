#ifndef ANONCHECK_SRC_PARALLEL_H_
#define ANONCHECK_SRC_PARALLEL_H_

#include <cstddef>
#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace anoncheck::internal {

// Runs body(i) for i in [0, n), in parallel when OpenMP is enabled.
// Exceptions cannot cross an OpenMP region, so they are captured and the
// one thrown at the smallest index is rethrown; which error surfaces is
// therefore independent of the schedule.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr first_error;
  std::size_t first_index = n;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16) if (n > 64)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(anoncheck_parallel_error)
      {
        if (static_cast<std::size_t>(i) < first_index) {
          first_index = static_cast<std::size_t>(i);
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace anoncheck::internal

#endif  // ANONCHECK_SRC_PARALLEL_H_
