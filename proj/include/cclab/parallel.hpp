#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace cclab {

/// Worker cap: CCLAB_THREADS if set (>=1), else hardware concurrency.
inline int thread_cap() {
    if (const char* env = std::getenv("CCLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, n). Strided static partition; each index is
/// computed exactly once, so any result written to slot i is independent of
/// scheduling.
inline void parallel_for(Eigen::Index n, const std::function<void(Eigen::Index)>& fn) {
    const int threads = std::min<Eigen::Index>(thread_cap(), n);
    if (threads <= 1) {
        for (Eigen::Index i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (Eigen::Index i = t; i < n; i += threads) fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cclab
