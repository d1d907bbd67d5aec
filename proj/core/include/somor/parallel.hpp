#pragma once

namespace somor {

// Number of threads internal parallelism may use. Defaults to the hardware
// concurrency, capped by the SOMOR_THREADS environment variable; at least 1.
int thread_budget();

}  // namespace somor
