#pragma once

#include <exception>
#include <vector>

#include <omp.h>

namespace ambrose {

enum class Exec { Serial, Parallel };

/// out[i] = f(i) for i in [0, count). The parallel path uses an OpenMP loop;
/// an exception from any index is rethrown after the loop (lowest index wins)
/// so both paths fail identically.
template <class R, class F>
std::vector<R> map_indices(int count, F&& f, Exec exec = Exec::Parallel) {
  std::vector<R> out(static_cast<std::size_t>(count));
  if (exec == Exec::Serial || count < 2) {
    for (int i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      out[i] = f(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Caps OpenMP worker threads (0 leaves the runtime default).
inline void set_thread_cap(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace ambrose
