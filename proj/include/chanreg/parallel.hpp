#pragma once

namespace chanreg::parallel {

/// Number of worker threads the kernels will use.
int max_threads();

/// Caps the worker count; values < 1 are ignored.
void set_threads(int n);

/// Applies CHANNELFLOW_THREADS if it is set to a positive integer.
/// Returns the resulting thread count.
int configure_from_env();

} // namespace chanreg::parallel
