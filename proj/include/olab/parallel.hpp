#pragma once

#include <cstddef>
#include <functional>

namespace olab {

/// Worker cap: ORTHOSET_LAB_THREADS if set, else hardware concurrency.
std::size_t max_threads();
void set_max_threads(std::size_t n);

/// Runs body(i) for i in [0, n) on up to max_threads() workers. Each index
/// is visited exactly once; results must be written to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace olab
