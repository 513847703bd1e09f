#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace esplab {

/// Runs fn(i) for i in [0, n) across up to `workers` threads with a static
/// block partition. Each index is processed exactly once and results must be
/// written to per-index slots, so the outcome is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    if (n == 0) return;
    const std::size_t w =
        workers <= 1 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    if (w == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(w);
    std::exception_ptr first_error;
    std::mutex guard;
    for (std::size_t t = 0; t < w; ++t) {
        const std::size_t lo = n * t / w;
        const std::size_t hi = n * (t + 1) / w;
        threads.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace esplab
