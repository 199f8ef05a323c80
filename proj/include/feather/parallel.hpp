#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace feather {

/// Number of workers actually used for a requested thread count.
/// 0 means "all hardware threads".
inline unsigned resolve_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(begin, end) over disjoint chunks of [0, count). Each index is
/// processed by exactly one worker, so writes to per-index outputs need no
/// synchronization and results do not depend on the worker count.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    unsigned workers = resolve_threads(threads);
    if (workers <= 1 || count < 2 * workers) {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
        const std::size_t begin = t * chunk;
        if (begin >= count) break;
        const std::size_t end = begin + chunk < count ? begin + chunk : count;
        pool.emplace_back([begin, end, &body] { body(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace feather
