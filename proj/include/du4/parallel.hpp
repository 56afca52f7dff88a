#pragma once

#include <cstdint>
#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace du4 {

// Worker count resolution: explicit value > DU4_JOBS env > hardware concurrency.
inline int default_jobs() {
    if (const char* env = std::getenv("DU4_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

inline int resolve_jobs(int jobs) {
    return jobs > 0 ? jobs : default_jobs();
}

// Splits [begin, end) into contiguous chunks, runs work(lo, hi) on each and
// merges the partial results in chunk order, so the outcome is identical for
// any worker count.
template <class Acc, class Work, class Merge>
Acc parallel_reduce(std::uint32_t begin, std::uint32_t end, int jobs, Work work, Merge merge) {
    jobs = resolve_jobs(jobs);
    std::uint32_t span = end > begin ? end - begin : 0;
    if (jobs <= 1 || span < 2) return work(begin, end);

    std::uint32_t chunks = std::min<std::uint32_t>(static_cast<std::uint32_t>(jobs), span);
    std::vector<std::future<Acc>> parts;
    parts.reserve(chunks);
    for (std::uint32_t c = 0; c < chunks; ++c) {
        std::uint32_t lo = begin + static_cast<std::uint32_t>((std::uint64_t)span * c / chunks);
        std::uint32_t hi = begin + static_cast<std::uint32_t>((std::uint64_t)span * (c + 1) / chunks);
        parts.push_back(std::async(std::launch::async, [=] { return work(lo, hi); }));
    }
    Acc acc = parts[0].get();
    for (std::uint32_t c = 1; c < chunks; ++c) merge(acc, parts[c].get());
    return acc;
}

}  // namespace du4
