#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace paretolab {

/// Runs body(i) for i in [0, count) on up to `workers` threads. Jobs are
/// claimed from a shared counter; callers store results by index so the
/// output does not depend on scheduling. The first exception thrown by any
/// job is rethrown after all threads join.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body&& body) {
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(run);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace paretolab
