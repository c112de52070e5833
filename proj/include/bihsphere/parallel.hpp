#pragma once

/// Index-parallel loop with slot-based result assembly: workers write into
/// pre-indexed slots, so output never depends on completion order. Thread
/// count comes from BIHSPHERE_THREADS (default 1).

#include <cstdlib>
#include <thread>
#include <vector>

namespace bihsphere {

inline int thread_count() {
    if (const char* env = std::getenv("BIHSPHERE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    const int threads = std::min(thread_count(), n > 0 ? n : 1);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace bihsphere
