/**
 * @file parallel.hpp
 * @brief Minimal static-partition parallel loop; thread cap from COTAN_THREADS.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace cotan {

inline unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("COTAN_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 1024));
        } catch (...) {
        }
    }
    return hw;
}

/// Calls f(i) for i in [0, n). Work is split into contiguous chunks; callers write results by index,
/// so output never depends on the thread count.
template <class F>
void parallel_for(std::int64_t n, F&& f) {
    if (n <= 0) return;
    unsigned nt = static_cast<unsigned>(std::min<std::int64_t>(thread_count(), n));
    if (nt <= 1) {
        for (std::int64_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex mu;
    for (unsigned t = 0; t < nt; ++t) {
        std::int64_t lo = n * t / nt, hi = n * (t + 1) / nt;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace cotan
