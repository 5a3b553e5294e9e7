#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace elg::detail {

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// fn(begin, end) on each. The first exception thrown by any chunk is rethrown.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), std::max<std::size_t>(count, 1));
    if (threads <= 1) {
        fn(std::size_t{0}, count);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t begin = 0; begin < count; begin += chunk) {
        const std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace elg::detail
