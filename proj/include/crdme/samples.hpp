#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace crdme {

/// Outcome of one replicate: the reaction time, or the time cap with the
/// censored flag set when no reaction happened by t_max.
struct Sample {
    double time = 0.0;
    bool censored = false;
};

/// Run `count` replicates of `body(replicate_index)` and collect results in
/// replicate order. Work is handed out through an atomic counter, but each
/// replicate writes only its own slot and draws only from its own RNG stream,
/// so the result vector is identical for any worker count.
template <typename Body>
std::vector<Sample> run_ensemble(uint64_t count, int workers, Body&& body)
{
    std::vector<Sample> out(count);
    if (count == 0)
        return out;
    unsigned n = workers > 0 ? static_cast<unsigned>(workers)
                             : std::max(1u, std::thread::hardware_concurrency());
    if (n > count)
        n = static_cast<unsigned>(count);

    if (n <= 1) {
        for (uint64_t r = 0; r < count; ++r)
            out[r] = body(r);
        return out;
    }

    std::atomic<uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const uint64_t r = next.fetch_add(1);
                if (r >= count)
                    return;
                try {
                    out[r] = body(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
    return out;
}

}  // namespace crdme
