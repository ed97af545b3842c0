#pragma once

#include <cstddef>

namespace pprei {

// Worker-thread cap shared by OpenMP loops and Eigen kernels.
std::size_t thread_count();
void set_thread_count(std::size_t threads);

/// Applies the PPREI_THREADS environment variable if it is set to a
/// positive integer.  Returns the resulting thread count.
std::size_t configure_threads_from_env();

}  // namespace pprei
