#pragma once

#include <cstddef>
#include <functional>

namespace potapov {

/// Worker count: hardware concurrency capped by the POTAPOV_THREADS environment variable.
[[nodiscard]] unsigned worker_count();

/// Runs body(i) for i in [0, count). Each index must write only its own output slot,
/// which keeps results independent of scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace potapov
