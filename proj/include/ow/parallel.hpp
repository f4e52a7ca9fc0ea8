#pragma once
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ow {

// Worker count: ORBIT_WIGNER_THREADS caps it, otherwise hardware concurrency.
inline int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("ORBIT_WIGNER_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) return cap;
        if (cap >= 1) return cap;
    }
    return hw;
}

// Deterministic parallel map: each index writes only its own slot, so the
// result is independent of how indices land on threads. Reductions over the
// output must be done by the caller in index order.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    int nt = thread_budget();
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (static_cast<std::size_t>(nt) > n) nt = static_cast<int>(n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nt) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace ow
