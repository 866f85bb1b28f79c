#ifndef SEQSWARM_RANDOM_HPP
#define SEQSWARM_RANDOM_HPP

#include <cstdint>
#include <random>
#include <span>

namespace seqswarm {

/// Source of uniform draws in [0,1). Every stochastic decision in the library
/// goes through this interface, so tests can script exact choice sequences and
/// runs are reproducible from a single 64-bit seed.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    /// Next uniform draw in [0,1).
    virtual double next_unit() = 0;
};

/// Mersenne-twister backed source. Draws are derived from the raw 64-bit
/// output (top 53 bits), not from std:: distributions, so the stream is
/// identical across standard library implementations.
class Mt19937Source final : public RandomSource {
public:
    explicit Mt19937Source(std::uint64_t seed) : engine_(seed) {}

    double next_unit() override {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

/// Roulette pick over non-negative weights: returns the index k whose
/// cumulative-weight bucket contains u * total. Consumes exactly one draw.
/// weights must be nonempty with a positive sum.
std::size_t pick_weighted(std::span<const double> weights, RandomSource& rng);

}  // namespace seqswarm

#endif
