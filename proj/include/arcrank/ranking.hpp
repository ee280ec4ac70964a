#ifndef ARCRANK_RANKING_HPP
#define ARCRANK_RANKING_HPP

#include <iosfwd>
#include <vector>

#include "arcrank/graph.hpp"

namespace arcrank {

/// A total order over the vertices. `order` lists vertex ids best-first,
/// `rank[v]` is the 1-based position of v in that list, and `scores[v]` is a
/// real-valued score that strictly decreases along `order` (the initial
/// assignment is scores[v] = n - rank[v] + 1).
struct Ranking {
    std::vector<VertexId> order;
    std::vector<int> rank;
    std::vector<double> scores;
};

/// Net weighted preference per incident comparison:
/// (sum of out-weights - sum of in-weights) / (out-degree + in-degree),
/// evaluated on the original graph; 0 for isolated vertices.
double tiebreak_score(VertexId vertex, const WeightedDigraph& original);

/// Kahn topological sort of the residual DAG where the ready set is a
/// max-priority queue keyed by (tiebreak_score on the original graph, then
/// descending vertex id). Throws if the residual graph is cyclic or the two
/// graphs disagree on the vertex set.
Ranking topological_rank(const WeightedDigraph& residual, const WeightedDigraph& original);

/// One `<label> <rank> <score>` line per vertex, best first.
void write_ranking(std::ostream& out, const Ranking& ranking, const WeightedDigraph& graph);

/// Reads the write_ranking format (a `label,rank,score` CSV header and comma
/// separators are also accepted). Validates that the file covers every vertex
/// exactly once, ranks form a permutation of 1..n, and scores strictly
/// decrease with rank.
Ranking read_ranking(std::istream& in, const WeightedDigraph& graph);

}  // namespace arcrank

#endif
