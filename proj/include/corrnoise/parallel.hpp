#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace corrnoise {

// Worker count from CORRNOISE_WORKERS, else the hardware concurrency (at least 1).
unsigned worker_count();

// out[i] = fn(i) for i in [0, n), evaluated on up to `workers` threads. Results keep index
// order; the exception of the lowest failing index is rethrown.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F fn, unsigned workers = worker_count()) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned w = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
    if (w <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < w; ++k) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

} // namespace corrnoise
