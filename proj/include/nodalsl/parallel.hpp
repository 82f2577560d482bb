#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nodalsl {

/// Worker cap from NODALSL_THREADS (0 or unset = one per hardware thread).
inline unsigned thread_cap() {
    if (const char* env = std::getenv("NODALSL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

/// Run body(i) for i in [0, count), work-stealing over a shared counter.
/// Each index must be independent; the first exception wins and is rethrown
/// after all workers finish.
template <class F>
void parallel_for(std::size_t count, F&& body) {
    const std::size_t cap = thread_cap();
    const std::size_t workers = std::min(cap, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                {
                    std::lock_guard lk(error_mu);
                    if (!error) error = std::current_exception();
                }
                next.store(count);  // drain remaining work
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace nodalsl
