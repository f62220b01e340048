#ifndef IWASAWA_PARALLEL_HPP
#define IWASAWA_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace iwasawa::parallel {

inline unsigned resolve_workers(unsigned requested)
{
    if (requested != 0)
        return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/* Runs body(i) for i in [0, count) on `workers` threads pulling indices from a
 * shared counter. The first exception is rethrown on the caller's thread. */
template <typename Body>
void for_each_index(std::size_t count, unsigned workers, Body && body)
{
    workers = resolve_workers(workers);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(run);
    for (auto & t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace iwasawa::parallel

#endif
