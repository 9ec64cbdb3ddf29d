#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace psp {

/// Worker count; 0 means std::thread::hardware_concurrency().
struct Parallelism {
    unsigned threads = 0;

    unsigned resolved() const noexcept
    {
        if (threads != 0)
            return threads;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
};

/// Calls body(i) for every i in [0, count). Indices are split into
/// contiguous blocks, one per worker. Callers store results by index and
/// reduce afterwards in index order, so values never depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, Parallelism par, Body&& body)
{
    const std::size_t workers = std::min<std::size_t>(par.resolved(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t block = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::size_t lo = w * block;
                const std::size_t hi = std::min(count, lo + block);
                for (std::size_t i = lo; i < hi; ++i)
                    body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace psp
