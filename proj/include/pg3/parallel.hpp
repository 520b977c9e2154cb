#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace pg3 {

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on each.
/// Chunk boundaries depend only on (n, threads), so workers writing to
/// disjoint, preallocated slots produce schedule-independent results.
/// Reductions and witness scans must happen after this returns.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
    if (threads <= 1 || n < 2048) {
        body(std::size_t{0}, n);
        return;
    }
    const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace pg3
