// Replica-parallel execution. Work items are indexed; every item derives
// its own RNG substream from its index, and results land in index order,
// so the output is identical for any thread count (including 1).

#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cgpoly {

inline int default_thread_count() {
    if (const char* env = std::getenv("CGPOLY_THREADS")) {
        const int k = std::atoi(env);
        if (k >= 1) return k;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace detail {
inline thread_local bool inside_parallel_region = false;
}

// Runs fn(i) for i in [0, count) across threads. Nested calls from inside a
// worker run serially, so outer loops own the parallelism.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         int threads = 0) {
    if (threads <= 0) threads = default_thread_count();
    if (threads == 1 || count <= 1 || detail::inside_parallel_region) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        detail::inside_parallel_region = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int k = static_cast<int>(std::min<std::size_t>(threads, count));
    pool.reserve(k);
    for (int w = 0; w < k; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace cgpoly
