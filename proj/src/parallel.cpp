#include "bohl/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <exception>
#include <thread>
#include <vector>

namespace bohl {

namespace {
int g_threads = 0;  // 0 = unresolved
}

int thread_count() {
    if (g_threads > 0) return g_threads;
    if (const char* env = std::getenv("BOHL_SPECTRA_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n) {
    g_threads = n > 0 ? n : 0;
}

int chunk_count(long n_items) {
    if (n_items <= 1) return n_items > 0 ? 1 : 0;
    return static_cast<int>(n_items < 64 ? n_items : 64);
}

void parallel_chunks(long n_items,
                     const std::function<void(long, long, int)>& fn) {
    const int chunks = chunk_count(n_items);
    if (chunks == 0) return;

    auto run_chunk = [&](int c) {
        const long lo = n_items * c / chunks;
        const long hi = n_items * (c + 1) / chunks;
        fn(lo, hi, c);
    };

    const int workers = std::min(thread_count(), chunks);
    if (workers <= 1) {
        for (int c = 0; c < chunks; ++c) run_chunk(c);
        return;
    }

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int c = next.fetch_add(1);
                if (c >= chunks || failed.load()) break;
                try {
                    run_chunk(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace bohl
