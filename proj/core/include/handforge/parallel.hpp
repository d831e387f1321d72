#pragma once

#include <cstddef>
#include <functional>

namespace handforge {

/// Worker cap: hardware concurrency, overridable by HANDFORGE_THREADS.
unsigned max_threads();

/// Run body(i) for i in [0, count). Work distribution is dynamic; callers
/// must write results into index-addressed slots so output does not depend
/// on completion order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace handforge
