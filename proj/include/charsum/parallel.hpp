#pragma once

namespace charsum {

// Thread count from CHARSUM_THREADS (unset or invalid: OpenMP default).
int worker_count();
// Applies worker_count() to the OpenMP runtime.
void configure_threads();

}  // namespace charsum
