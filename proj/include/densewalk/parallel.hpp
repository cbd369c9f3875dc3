#pragma once

#include <cstddef>
#include <functional>

namespace densewalk {

// 0 restores the default (hardware concurrency).
void set_max_threads(unsigned n);
unsigned max_threads();

// Invokes fn(begin, end) over a static partition of [0, n), possibly from
// several threads. Work units must write disjoint state and must not depend
// on execution order; under that contract results are identical for every
// thread count. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace densewalk
