#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace skyrelay {

/// Static block partition of [0, n) over `jobs` threads.  Each index writes
/// only its own output slot, so results do not depend on the worker count.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
    if (n <= 0) return;
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(jobs));
    const int chunk = (n + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace skyrelay
