#pragma once

// Chunked parallel-for over index ranges. Results must be combined with
// order-independent reductions (max/min) so runs stay deterministic for any
// thread count.

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace torus::par {

inline std::atomic<int>& thread_count_ref() {
    static std::atomic<int> count{1};
    return count;
}

inline void set_threads(int n) { thread_count_ref().store(n < 1 ? 1 : n); }
inline int threads() { return thread_count_ref().load(); }

// f(begin, end) over disjoint chunks of [0, n).
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    const int t = threads();
    if (t <= 1 || n < 2048) {
        f(std::size_t{0}, n);
        return;
    }
    const std::size_t chunks = static_cast<std::size_t>(t);
    const std::size_t step = (n + chunks - 1) / chunks;
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = c * step;
        const std::size_t end = begin + step < n ? begin + step : n;
        if (begin >= end) break;
        workers.emplace_back([&f, begin, end] { f(begin, end); });
    }
    for (std::thread& w : workers) w.join();
}

}  // namespace torus::par
