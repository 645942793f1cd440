#pragma once
#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

namespace hforge {

// Worker cap: HELFRICH_FORGE_THREADS if set, else hardware concurrency.
int thread_cap();

// Runs jobs 0..n-1, possibly concurrently, and collects results in index
// order so reductions stay deterministic regardless of scheduling.
template <typename Job>
auto map_ordered(int n, Job&& job) -> std::vector<decltype(job(0))> {
    using R = decltype(job(0));
    std::vector<R> out(n > 0 ? n : 0);
    const int workers = std::min(thread_cap(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) out[i] = job(i);
        return out;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i] = job(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace hforge
