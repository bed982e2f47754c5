#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace nptlab {

// Worker cap: NPTLAB_THREADS if set (min 1), else hardware concurrency.
inline int thread_cap() {
    if (const char* env = std::getenv("NPTLAB_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

// Runs f(i) for i in [0, n). Work items must be independent; any shared
// accumulation is the caller's job (merge per-index results afterwards so
// the outcome is order-independent).
template <typename F>
void parallel_for(size_t n, F&& f) {
    const int workers = std::min<size_t>(thread_cap(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += workers) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace nptlab
