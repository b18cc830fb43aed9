#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace lienard {

/// Selects between the OpenMP kernel and the serial reference loop. Both
/// write results by index, so their outputs are bitwise identical.
enum class Exec { serial, parallel };

/// Runs body(i) for i in [0, count). Exceptions thrown by any iteration are
/// captured and the first one is rethrown on the calling thread.
template <typename Body>
void for_each_index(std::size_t count, Exec exec, Body&& body) {
  if (exec == Exec::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lienard
