#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace cofuse {

/// Runs fn(begin, end) over [0, count) split into `threads` contiguous
/// chunks. Work items must not share state; every index is visited exactly
/// once, so results do not depend on the thread count.
template <typename Fn>
void parallel_for(Eigen::Index count, int threads, Fn&& fn)
{
    const Eigen::Index workers = std::clamp<Eigen::Index>(threads, 1, std::max<Eigen::Index>(count, 1));
    if (workers == 1) {
        fn(Eigen::Index{0}, count);
        return;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
    const Eigen::Index chunk = (count + workers - 1) / workers;
    for (Eigen::Index w = 0; w < workers; ++w) {
        const Eigen::Index begin = std::min(count, w * chunk);
        const Eigen::Index end = std::min(count, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                failures[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& f : failures)
        if (f)
            std::rethrow_exception(f);
}

} // namespace cofuse
