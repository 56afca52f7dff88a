#pragma once

#include <random>
#include <utility>
#include <vector>

#include "du4/subsets.hpp"

namespace testsup {

// Uniform random admissible set: {0,1} with probability 1/2, each sigma pair
// with probability 1/2.
inline du4::ElementSet random_admissible_set(
    const du4::FieldRef& ctx, const std::vector<std::pair<du4::Elem, du4::Elem>>& pairs,
    std::mt19937_64& rng) {
    du4::ElementSet s(ctx);
    if (rng() & 1) {
        s.insert(0);
        s.insert(1);
    }
    for (auto [x, y] : pairs)
        if (rng() & 1) {
            s.insert(x);
            s.insert(y);
        }
    return s;
}

inline std::vector<du4::Elem> random_permutation_table(std::uint32_t q, std::mt19937_64& rng) {
    std::vector<du4::Elem> t(q);
    for (std::uint32_t i = 0; i < q; ++i) t[i] = i;
    std::shuffle(t.begin(), t.end(), rng);
    return t;
}

}  // namespace testsup
