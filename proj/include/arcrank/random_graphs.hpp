#ifndef ARCRANK_RANDOM_GRAPHS_HPP
#define ARCRANK_RANDOM_GRAPHS_HPP

#include <cstdint>
#include <random>

#include "arcrank/graph.hpp"

namespace arcrank {

namespace rng_util {
/// Uniform integer in [0, bound); 0 when bound is 0. Plain modulo: the tiny
/// bias is irrelevant for test data, and the result is identical on every
/// platform, unlike the standard distributions.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform real in (0, 1], again platform-independent.
double unit(std::mt19937_64& rng);
}  // namespace rng_util

struct RandomGraphOptions {
    std::size_t n = 0;
    double edge_prob = 0.3;
    double weight_low = 1.0;
    double weight_high = 10.0;
    bool integer_weights = true;  // false: uniform reals in (weight_low, weight_high]
};

/// Each ordered pair (u, v), u != v, becomes an edge independently with
/// probability edge_prob. Deterministic for a given engine state.
WeightedDigraph random_digraph(const RandomGraphOptions& options, std::mt19937_64& rng);

}  // namespace arcrank

#endif
