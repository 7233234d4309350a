#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ainf {

// Worker count: AINF_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_threads();

// Runs body(i) for i in [0, n). Results must be written to per-index slots
// so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F&& f)
{
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

}  // namespace ainf
