#include "arcrank/solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace arcrank {

namespace {

template <typename Fn>
void for_each_cycle_edge(const CyclePath& cycle, Fn&& fn) {
    for (std::size_t k = 0; k + 1 < cycle.size(); ++k) fn(cycle[k], cycle[k + 1]);
    fn(cycle.back(), cycle.front());
}

/// Rebuilds the original graph minus the removed ordered pairs, so surviving
/// edges come out with their original weights.
WeightedDigraph subtract_removed(const WeightedDigraph& original,
                                 const std::vector<WeightedEdge>& removed) {
    std::vector<std::pair<VertexId, VertexId>> gone;
    gone.reserve(removed.size());
    for (const WeightedEdge& e : removed) gone.emplace_back(e.src, e.dst);
    std::sort(gone.begin(), gone.end());

    WeightedDigraph result(original.labels());
    for (const WeightedEdge& e : original.edges()) {
        if (!std::binary_search(gone.begin(), gone.end(), std::make_pair(e.src, e.dst))) {
            result.add_edge(e.src, e.dst, e.weight);
        }
    }
    return result;
}

double sum_weights(const std::vector<WeightedEdge>& edges) {
    double sum = 0.0;
    for (const WeightedEdge& e : edges) sum += e.weight;
    return sum;
}

FeedbackArcResult make_result(const WeightedDigraph& original,
                              std::vector<WeightedEdge> removed) {
    FeedbackArcResult result;
    result.residual_dag = subtract_removed(original, removed);
    result.removed_weight = sum_weights(removed);
    result.removed_edges = std::move(removed);
    return result;
}

}  // namespace

FeedbackArcResult solve_local_ratio(const WeightedDigraph& graph, double zero_threshold) {
    if (!(zero_threshold >= 0.0)) {
        throw std::invalid_argument("zero_threshold must be non-negative");
    }

    WeightedDigraph residual = graph;  // weights mutate during cancellation
    std::vector<WeightedEdge> cancelled;  // recorded with original weights

    while (auto cycle = find_cycle(residual)) {
        double delta = std::numeric_limits<double>::infinity();
        for_each_cycle_edge(*cycle, [&](VertexId u, VertexId v) {
            delta = std::min(delta, *residual.weight_of(u, v));
        });
        for_each_cycle_edge(*cycle, [&](VertexId u, VertexId v) {
            const double left = *residual.weight_of(u, v) - delta;
            if (left <= zero_threshold) {
                residual.remove_edge(u, v);
                cancelled.push_back({u, v, *graph.weight_of(u, v)});
            } else {
                residual.set_weight(u, v, left);
            }
        });
    }

    // heaviest first; equal weights by ascending (src, dst)
    std::sort(cancelled.begin(), cancelled.end(),
              [](const WeightedEdge& a, const WeightedEdge& b) {
                  if (a.weight != b.weight) return a.weight > b.weight;
                  if (a.src != b.src) return a.src < b.src;
                  return a.dst < b.dst;
              });

    std::vector<WeightedEdge> removed;
    for (const WeightedEdge& e : cancelled) {
        if (detail::reaches(residual, e.dst, e.src)) {
            removed.push_back(e);
        } else {
            residual.add_edge(e.src, e.dst, e.weight);
        }
    }
    return make_result(graph, std::move(removed));
}

FeedbackArcResult solve_exact(const WeightedDigraph& graph, std::size_t max_vertices) {
    const std::size_t n = graph.vertex_count();
    if (n > max_vertices) {
        throw std::invalid_argument("graph too large for the exhaustive solver (n=" +
                                    std::to_string(n) + ", limit " +
                                    std::to_string(max_vertices) + ")");
    }
    const std::vector<WeightedEdge> all_edges = graph.edges();

    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> position(n);
    std::vector<VertexId> best_perm = perm;
    double best_weight = std::numeric_limits<double>::infinity();

    // next_permutation enumerates in lexicographic order, so keeping the first
    // strict improvement resolves ties toward the smallest ordering
    do {
        for (std::size_t k = 0; k < n; ++k) position[perm[k]] = k;
        double backward = 0.0;
        for (const WeightedEdge& e : all_edges) {
            if (position[e.src] > position[e.dst]) backward += e.weight;
        }
        if (backward < best_weight) {
            best_weight = backward;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (std::size_t k = 0; k < n; ++k) position[best_perm[k]] = k;
    std::vector<WeightedEdge> removed;
    for (const WeightedEdge& e : all_edges) {
        if (position[e.src] > position[e.dst]) removed.push_back(e);
    }
    return make_result(graph, std::move(removed));
}

FeedbackArcResult solve(const WeightedDigraph& graph, const SolverStrategy& strategy) {
    switch (strategy.tag) {
        case SolverTag::LocalRatioHeuristic:
            return solve_local_ratio(graph, strategy.zero_threshold);
        case SolverTag::ExactBruteforce:
            return solve_exact(graph, strategy.max_exact_vertices);
    }
    throw std::invalid_argument("unknown solver strategy");
}

}  // namespace arcrank
