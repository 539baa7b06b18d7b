#pragma once
#include <cstddef>
#include <functional>

namespace phaseless {

/// Worker count: hardware concurrency, capped by PHASELESS_THREADS when set.
std::size_t thread_budget();

/// Runs fn(begin, end) over a static partition of [0, n). Results must be
/// written to disjoint slots; no reduction happens here, so the partition
/// never affects values.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace phaseless
