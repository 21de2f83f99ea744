#ifndef GENTREE_PARALLEL_HPP
#define GENTREE_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace gentree {

inline int default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(i) for i in [0, total) across threads. Items must be independent;
// determinism comes from per-item work (e.g. per-item rng streams), not from
// scheduling.
template <typename Fn>
void parallel_for(std::size_t total, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || total < 2) {
        for (std::size_t i = 0; i < total; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace gentree

#endif
