#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace pcm {

inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Splits [0, count) into one contiguous chunk per worker and runs
/// fn(worker_index, begin, end) on each. Blocks until all chunks finish.
inline void parallel_chunks(long count, int workers,
                            const std::function<void(int, long, long)>& fn) {
    const int w = std::min<long>(resolve_workers(workers), std::max(count, 1L));
    if (w <= 1) {
        fn(0, 0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(w));
    const long chunk = (count + w - 1) / w;
    for (int i = 0; i < w; ++i) {
        const long b = std::min<long>(static_cast<long>(i) * chunk, count);
        const long e = std::min<long>(b + chunk, count);
        pool.emplace_back([&fn, i, b, e] { fn(i, b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace pcm
