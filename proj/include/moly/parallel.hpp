#ifndef MOLY_PARALLEL_HPP
#define MOLY_PARALLEL_HPP

#include <atomic>
#include <thread>
#include <vector>

namespace moly {

/// Worker cap for subset-parallel loops (set once at startup; 1 = serial).
/// Results are always written into index-addressed slots, so the output is
/// byte-identical regardless of the width.
inline int& worker_count() {
    static int w = 1;
    return w;
}

template <typename Fn>
void parallel_for(int count, Fn&& fn) {
    const int jobs = std::min(worker_count(), count);
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) break;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

} // namespace moly

#endif
