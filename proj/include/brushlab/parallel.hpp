#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace brushlab {

// Runs fn(i) for i in [0, n). Results must be written to preallocated slots so
// the outcome is identical for any thread count. The first exception raised by
// a worker is rethrown on the calling thread after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += nt) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace brushlab
