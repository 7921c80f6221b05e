#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace votemart {

// Runs f(i) for i in [0, n) split into contiguous chunks across threads.
// Callers make f(i) depend only on i (per-index RNG streams), so the choice
// of n_threads never changes results, only wall time.  n_threads = 0 means
// hardware concurrency.
template <class F>
void parallel_for(std::size_t n, F&& f, unsigned n_threads = 0) {
    if (n == 0) return;
    if (n_threads == 0) {
        n_threads = std::thread::hardware_concurrency();
        if (n_threads == 0) n_threads = 1;
    }
    const std::size_t chunk_count =
        n < static_cast<std::size_t>(n_threads) ? n : n_threads;
    if (chunk_count <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(chunk_count);
    for (std::size_t c = 0; c < chunk_count; ++c) {
        const std::size_t lo = n * c / chunk_count;
        const std::size_t hi = n * (c + 1) / chunk_count;
        workers.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace votemart
