#ifndef LOGDECAY_PARALLEL_HPP
#define LOGDECAY_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace logdecay {

/// Worker count: explicit request, else LOGDECAY_WORKERS, else hardware.
inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LOGDECAY_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

/// Static block partition of [0, n); results must be written to
/// caller-provided per-index slots so output order stays deterministic.
template <class F>
void parallel_for(int n, int workers, F&& fn) {
    workers = std::min(std::max(1, workers), std::max(1, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        int lo = (long long)n * w / workers;
        int hi = (long long)n * (w + 1) / workers;
        pool.emplace_back([lo, hi, &fn]() {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace logdecay

#endif
