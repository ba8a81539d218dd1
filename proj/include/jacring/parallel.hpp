#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace jacring {

// Index-keyed parallel map: results are stored by index, so the outcome is
// identical for every worker count and schedule.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t count, int threads, Fn&& fn) {
    std::vector<R> results(count);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            results[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(count));
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace jacring
