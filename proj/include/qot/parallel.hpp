#pragma once

#include <functional>

namespace qot {

/// Worker count: QOT_THREADS when set, else hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n). Results must be written by index; the call is deterministic
/// regardless of worker count. Nested calls run serially.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace qot
