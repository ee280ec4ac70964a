#ifndef ARCRANK_GRAPH_HPP
#define ARCRANK_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arcrank {

using VertexId = std::uint32_t;

struct WeightedEdge {
    VertexId src = 0;
    VertexId dst = 0;
    double weight = 0.0;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// A line that cannot be tokenized or parsed (bad field count, non-numeric weight).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A line that parses but carries an invalid value (non-positive weight).
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Directed graph with strictly positive edge weights and at most one edge per
/// ordered vertex pair. Adjacency lists (out and in) are kept sorted by
/// neighbor id so every traversal is deterministic. Single writer; fully
/// constructed graphs are safe to share read-only.
class WeightedDigraph {
public:
    using Neighbor = std::pair<VertexId, double>;  // (other endpoint, weight)

    WeightedDigraph() = default;
    explicit WeightedDigraph(std::size_t n);  // labels "0".."n-1"
    explicit WeightedDigraph(std::vector<std::string> labels);

    std::size_t vertex_count() const noexcept { return out_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    double total_weight() const;

    VertexId add_vertex(std::string label);
    const std::string& label_of(VertexId v) const { return labels_.at(v); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::optional<VertexId> vertex_of(std::string_view label) const;

    /// Inserts an edge; a duplicate (src, dst) is merged by summing weights.
    /// Rejects self-loops and non-positive weights.
    void add_edge(VertexId src, VertexId dst, double weight);
    bool remove_edge(VertexId src, VertexId dst);
    void set_weight(VertexId src, VertexId dst, double weight);
    bool has_edge(VertexId src, VertexId dst) const;
    std::optional<double> weight_of(VertexId src, VertexId dst) const;

    std::span<const Neighbor> out_edges(VertexId v) const { return out_.at(v); }
    std::span<const Neighbor> in_edges(VertexId v) const { return in_.at(v); }
    std::size_t out_degree(VertexId v) const { return out_.at(v).size(); }
    std::size_t in_degree(VertexId v) const { return in_.at(v).size(); }

    /// All edges in ascending (src, dst) order.
    std::vector<WeightedEdge> edges() const;

private:
    void check_vertex(VertexId v) const;

    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> index_;
    std::vector<std::vector<Neighbor>> out_;
    std::vector<std::vector<Neighbor>> in_;
    std::size_t edge_count_ = 0;
};

struct ParseStats {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_merged = 0;
};

/// Reads a whitespace-separated `src dst weight` edge list. Blank lines and
/// lines whose first token begins with '#' are ignored. Labels are arbitrary
/// tokens, mapped to dense ids in first-appearance order. Duplicate directed
/// edges are merged by summing weights; self-loops are dropped and counted.
WeightedDigraph parse_edge_list(std::istream& in, ParseStats* stats = nullptr);

/// Inverse of parse_edge_list, full weight precision.
void write_edge_list(std::ostream& out, const WeightedDigraph& g);

using CyclePath = std::vector<VertexId>;

/// First directed cycle found by DFS (roots and neighbors in ascending id).
/// The returned vertex sequence closes on itself: every consecutive pair is an
/// edge, and so is last -> first. Absent iff the graph is a DAG.
std::optional<CyclePath> find_cycle(const WeightedDigraph& g);

/// Kahn-style acyclicity test, independent of find_cycle.
bool is_acyclic(const WeightedDigraph& g);

/// True iff inserting `edge` into the graph would close a cycle, i.e.
/// edge.dst already reaches edge.src. The graph must be acyclic and must not
/// already contain the edge.
bool would_create_cycle(const WeightedDigraph& g, const WeightedEdge& edge);

namespace detail {
/// Directed reachability; skips the acyclicity precondition check.
bool reaches(const WeightedDigraph& g, VertexId from, VertexId to);
}

}  // namespace arcrank

#endif
