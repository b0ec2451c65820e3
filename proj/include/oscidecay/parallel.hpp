// Index-striped parallel map. Each index writes only its own result slot, so
// outputs are identical for any worker count.

#ifndef OSCIDECAY_PARALLEL_HPP
#define OSCIDECAY_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace oscidecay {

inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const int workers = (int)std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += workers) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace oscidecay

#endif
