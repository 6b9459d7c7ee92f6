#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "tubal/types.hpp"

namespace tubal {

/// Runs body(k) for k in [0, count). Under Execution::parallel faces are
/// distributed over OpenMP threads; each face must write a disjoint region.
/// The exception thrown by the lowest failing face is rethrown.
template <class Body>
void forEachFace(std::size_t count, Execution exec, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const bool parallel = exec == Execution::parallel && count > 1;
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(static) if (parallel)
  for (long long k = 0; k < n; ++k) {
    try {
      body(static_cast<std::size_t>(k));
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace tubal
