#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace stripwin {

/// Worker count from STRIPWIN_WORKERS, else the hardware concurrency.
int worker_count();

/// Calls fn(0) ... fn(count - 1), spread over worker_count() threads. The
/// first exception thrown (lowest index) is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn fn) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace stripwin
