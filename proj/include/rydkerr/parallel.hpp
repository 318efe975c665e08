#pragma once

#include <cstddef>
#include <functional>

namespace rydkerr {

/// Worker count used by parallel_for: the --threads override if set,
/// otherwise the RYDKERR_THREADS environment variable, otherwise the
/// hardware concurrency.
int thread_budget();
void set_thread_budget(int n);  // n <= 0 restores the default

/// Runs body(i) for i in [0, n). Work is split into contiguous blocks; each
/// index is processed exactly once, so writes to per-index slots are
/// deterministic regardless of the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rydkerr
