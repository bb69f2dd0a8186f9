#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace tracecone {

/// Worker count: TRACECONE_THREADS when set to a positive integer, hardware
/// concurrency otherwise ("0" also means auto).
inline unsigned thread_count() {
    if (const char* env = std::getenv("TRACECONE_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Evaluates fn(0..n-1) and returns the results in index order. Work is split
/// into contiguous chunks; the output never depends on scheduling. If several
/// calls throw, the exception of the smallest index is rethrown.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn, std::size_t min_per_thread = 8)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
    using Result = std::invoke_result_t<Fn&, std::size_t>;
    const std::size_t workers =
        std::min<std::size_t>(thread_count(), min_per_thread == 0 ? n : n / min_per_thread);

    std::vector<Result> out;
    out.reserve(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
        return out;
    }

    std::vector<std::optional<Result>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) {
                    try {
                        slots[i].emplace(fn(i));
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
    }
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

}  // namespace tracecone
