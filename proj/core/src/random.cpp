#include "seqswarm/random.hpp"

#include <cassert>

namespace seqswarm {

std::size_t pick_weighted(std::span<const double> weights, RandomSource& rng) {
    assert(!weights.empty());
    double total = 0.0;
    for (double w : weights) total += w;
    assert(total > 0.0);
    const double target = rng.next_unit() * total;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cumulative += weights[i];
        if (target < cumulative) return i;
    }
    return weights.size() - 1;  // guards float round-off at target ~ total
}

}  // namespace seqswarm
