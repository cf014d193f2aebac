#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rsma {

// Monte Carlo trials are grouped into fixed-size chunks whose boundaries do
// not depend on the thread count. Each chunk is reduced sequentially and the
// chunk results are combined in chunk order, so estimates are bit-identical
// for any number of threads.
inline constexpr std::uint64_t kTrialChunk = 256;

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Calls fn(chunk_index) for every chunk in [0, num_chunks) on up to `threads`
// workers. The first exception thrown by a worker is rethrown on the caller.
template <class Fn>
void for_each_chunk(std::size_t num_chunks, unsigned threads, Fn&& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), num_chunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < num_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= num_chunks) return;
            try {
                fn(c);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(num_chunks);
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

inline std::size_t chunk_count(std::uint64_t trials) {
    return static_cast<std::size_t>((trials + kTrialChunk - 1) / kTrialChunk);
}

}  // namespace rsma
