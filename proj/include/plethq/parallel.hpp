#ifndef PLETHQ_PARALLEL_HPP
#define PLETHQ_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace plethq {

inline constexpr const char* kWorkersEnv = "PLETHQ_WORKERS";

// PLETHQ_WORKERS if set to a positive integer, else the hardware concurrency.
inline unsigned worker_count()
{
    if (const char* env = std::getenv(kWorkersEnv)) {
        try {
            int n = std::stoi(env);
            if (n > 0)
                return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// results[i] = fn(i); the output order never depends on scheduling.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, Fn&& fn, unsigned workers = worker_count())
{
    std::vector<Result> results(count);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    results[i] = fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

} // namespace plethq

#endif // PLETHQ_PARALLEL_HPP
