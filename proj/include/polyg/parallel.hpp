#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace polyg::par {

// Worker count: POLYGINIBRE_THREADS when set, machine parallelism otherwise.
inline int worker_count() {
    static const int count = [] {
        if (const char* env = std::getenv("POLYGINIBRE_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }();
    return count;
}

// Runs f(i) for i in [0, n) across workers in fixed contiguous blocks.
// Results must be written to index-addressed slots so the outcome is
// independent of the worker count; reductions happen serially afterwards.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    const int workers = worker_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        if (lo >= n) break;
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&f, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace polyg::par
