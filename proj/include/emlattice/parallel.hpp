// SPDX-License-Identifier: Apache-2.0
//
// Thin OpenMP layer. Every parallel loop has deterministic output: iterations
// write to disjoint slots and reductions happen serially afterwards.
#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace emlattice {

void set_jobs(int jobs);
int jobs();
bool parallel_enabled();

// Runs body(i) for i in [0, n). The first exception thrown (lowest index) is
// rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace emlattice
