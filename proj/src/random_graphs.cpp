#include "arcrank/random_graphs.hpp"

#include <cmath>
#include <stdexcept>

namespace arcrank {

namespace rng_util {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) return 0;
    return rng() % bound;
}

double unit(std::mt19937_64& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace rng_util

WeightedDigraph random_digraph(const RandomGraphOptions& options, std::mt19937_64& rng) {
    if (!(options.edge_prob >= 0.0 && options.edge_prob <= 1.0)) {
        throw std::invalid_argument("edge_prob must be in [0, 1]");
    }
    if (!(options.weight_low <= options.weight_high)) {
        throw std::invalid_argument("weight_low must not exceed weight_high");
    }
    WeightedDigraph g(options.n);
    for (VertexId u = 0; u < options.n; ++u) {
        for (VertexId v = 0; v < options.n; ++v) {
            if (u == v) continue;
            if (rng_util::unit(rng) > options.edge_prob) continue;
            double weight;
            if (options.integer_weights) {
                const auto low = static_cast<std::int64_t>(std::llround(options.weight_low));
                const auto high = static_cast<std::int64_t>(std::llround(options.weight_high));
                weight = static_cast<double>(
                    low + static_cast<std::int64_t>(
                              rng_util::below(rng, static_cast<std::uint64_t>(high - low + 1))));
            } else {
                weight = options.weight_low +
                         (options.weight_high - options.weight_low) * rng_util::unit(rng);
            }
            g.add_edge(u, v, weight);
        }
    }
    return g;
}

}  // namespace arcrank
