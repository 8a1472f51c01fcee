#pragma once

#include <cstddef>
#include <functional>

namespace gbcurv {

// Worker count: explicit value, else GBCURV_JOBS, else hardware concurrency.
int default_jobs();

// Runs body(0..count-1) on up to `jobs` threads. Results must be written to
// preallocated slots so the outcome does not depend on scheduling order.
// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace gbcurv
