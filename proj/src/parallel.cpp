#include "ionsynth/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ionsynth {

void parallel_for(std::size_t n_jobs, int threads,
                  const std::function<void(std::size_t)>& fn) {
    if (n_jobs == 0) return;
    if (threads < 1) threads = 1;
    const std::size_t n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), n_jobs);

    if (n_workers == 1) {
        for (std::size_t i = 0; i < n_jobs; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_jobs) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
        th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace ionsynth
