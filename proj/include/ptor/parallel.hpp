#pragma once

#include <omp.h>

#include <cstddef>

namespace ptor {

// Index-parallel loop with results written to per-index slots, so the merge
// is deterministic regardless of schedule.  Exceptions are captured and
// rethrown on the calling thread.
template <class F>
void parallel_for_index(long n, bool enable, F&& body) {
  if (!enable || n < 4) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

} // namespace ptor
