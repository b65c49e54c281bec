#pragma once

// Sweep dispatch. Every sweep in the library has a serial reference path and
// an OpenMP path; both write results by index so the output does not depend
// on the worker count.

#include <cstddef>
#include <exception>
#include <mutex>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace replication {

enum class Execution { Serial, Parallel };

struct ExecutionPolicy {
  Execution mode = Execution::Parallel;
  int workers = 0;  // 0: runtime default
};

inline ExecutionPolicy serial_policy() { return {Execution::Serial, 1}; }

inline int max_workers() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Keeps the exception of the lowest failing index, so a parallel sweep
// reports the same error as the serial loop.
class ExceptionSink {
 public:
  template <class F>
  void run(std::size_t index, F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex_);
      if (!error_ || index < index_) {
        error_ = std::current_exception();
        index_ = index;
      }
    }
  }

  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
  std::size_t index_ = 0;
};

// Calls body(i) for i in [0, n). Iterations must be independent.
template <class Body>
void for_each_index(std::size_t n, const ExecutionPolicy& policy, Body&& body) {
  if (policy.mode == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  ExceptionSink sink;
  const long count = static_cast<long>(n);
#if defined(_OPENMP)
  const int threads = policy.workers > 0 ? policy.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (long i = 0; i < count; ++i) {
    sink.run(static_cast<std::size_t>(i), [&] { body(static_cast<std::size_t>(i)); });
  }
  sink.rethrow();
}

}  // namespace replication
