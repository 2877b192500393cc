#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qcclab {

/// Worker count: QCC_LAB_THREADS if set and positive, else hardware concurrency.
inline std::size_t thread_budget() {
    std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QCC_LAB_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return std::min<std::size_t>(static_cast<std::size_t>(v), hw);
        } catch (...) {
        }
    }
    return hw;
}

/// out[i] = fn(i) for i in [0, count). Results are placed by index, so the
/// output does not depend on scheduling. If any call throws, the exception of
/// the lowest failing index is rethrown.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t count, Fn&& fn) {
    std::vector<R> out(count);
    const std::size_t workers = std::min(thread_budget(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> failures(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    out[i] = fn(i);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);
    return out;
}

}  // namespace qcclab
