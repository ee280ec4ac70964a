#ifndef ARCRANK_SOLVER_HPP
#define ARCRANK_SOLVER_HPP

#include <cstddef>
#include <vector>

#include "arcrank/graph.hpp"

namespace arcrank {

/// Outcome of a feedback-arc-set computation. Surviving edges carry their
/// original weights in residual_dag, and removed edges are recorded with
/// original weights as well, so downstream ranking and loss evaluation see the
/// unmodified comparison data. Removed and surviving edges partition the
/// input edge set, and no removed edge can be reinserted without closing a
/// cycle.
struct FeedbackArcResult {
    WeightedDigraph residual_dag;
    std::vector<WeightedEdge> removed_edges;
    double removed_weight = 0.0;
};

enum class SolverTag { LocalRatioHeuristic, ExactBruteforce };

struct SolverStrategy {
    SolverTag tag = SolverTag::LocalRatioHeuristic;
    double zero_threshold = 1e-9;        // residual weight at/below which an edge is deleted
    std::size_t max_exact_vertices = 10; // exact solver refuses anything larger
};

/// Cycle cancellation with greedy reinsertion: while a cycle exists, subtract
/// the cycle's minimum residual weight from every cycle edge and delete the
/// edges that reach (numerical) zero; afterwards, walk the deleted edges in
/// decreasing original weight and put back every edge whose return keeps the
/// graph acyclic.
FeedbackArcResult solve_local_ratio(const WeightedDigraph& graph,
                                    double zero_threshold = 1e-9);

/// Exhaustive minimum: evaluates every vertex ordering and removes the
/// backward edges of the cheapest one. Ties resolve to the lexicographically
/// smallest ordering. Only for small instances (n! orderings).
FeedbackArcResult solve_exact(const WeightedDigraph& graph,
                              std::size_t max_vertices = 10);

FeedbackArcResult solve(const WeightedDigraph& graph, const SolverStrategy& strategy);

}  // namespace arcrank

#endif
