#ifndef TIGHTPATH_UTIL_HPP
#define TIGHTPATH_UTIL_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace tightpath {

/// Thrown when an exact routine is asked to run past its configured budget
/// (vertex-count cutoff or memory cap). Callers get a signal, never a guess.
class budget_exceeded_error : public std::runtime_error {
public:
    explicit budget_exceeded_error(const std::string& what) : std::runtime_error(what) {}
};

// SplitMix64 step; used to derive independent RNG streams from one seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline unsigned long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (unsigned long long)(n - k + i) / i;
    return r;
}

/// Thread cap: min(requested or hardware, TIGHTPATH_THREADS env var).
inline int effective_thread_count(int requested = 0) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int n = requested > 0 ? std::min(requested, hw) : hw;
    if (const char* env = std::getenv("TIGHTPATH_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::max(n, 1);
}

/// Runs fn(i) for i in [0, count). Callers write results into per-index
/// slots, so the outcome is independent of scheduling.
inline void parallel_for_indexed(std::size_t count, int threads,
                                 const std::function<void(std::size_t)>& fn) {
    threads = std::min<std::size_t>(effective_thread_count(threads), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tightpath

#endif
