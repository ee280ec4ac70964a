#include "arcrank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "arcrank/format.hpp"

namespace arcrank {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (i < line.size()) {
        while (i < line.size() && is_sep(line[i])) ++i;
        std::size_t j = i;
        while (j < line.size() && !is_sep(line[j])) ++j;
        if (j > i) fields.push_back(line.substr(i, j - i));
        i = j;
    }
    return fields;
}

double parse_weight(std::string_view token, std::size_t line_no) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line_no, "weight is not a number: '" + std::string(token) + "'");
    }
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw ValidationError(line_no,
                              "weight must be a positive finite number, got '" +
                                  std::string(token) + "'");
    }
    return value;
}

using NeighborList = std::vector<WeightedDigraph::Neighbor>;

NeighborList::iterator find_neighbor(NeighborList& list, VertexId id) {
    return std::lower_bound(list.begin(), list.end(), id,
                            [](const WeightedDigraph::Neighbor& nb, VertexId key) {
                                return nb.first < key;
                            });
}

NeighborList::const_iterator find_neighbor(const NeighborList& list, VertexId id) {
    return std::lower_bound(list.begin(), list.end(), id,
                            [](const WeightedDigraph::Neighbor& nb, VertexId key) {
                                return nb.first < key;
                            });
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

ValidationError::ValidationError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

WeightedDigraph::WeightedDigraph(std::size_t n) {
    labels_.reserve(n);
    out_.resize(n);
    in_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        labels_.push_back(std::to_string(v));
        index_.emplace(labels_.back(), static_cast<VertexId>(v));
    }
}

WeightedDigraph::WeightedDigraph(std::vector<std::string> labels) : labels_(std::move(labels)) {
    out_.resize(labels_.size());
    in_.resize(labels_.size());
    for (std::size_t v = 0; v < labels_.size(); ++v) {
        auto [it, inserted] = index_.emplace(labels_[v], static_cast<VertexId>(v));
        if (!inserted) throw std::invalid_argument("duplicate vertex label: " + labels_[v]);
    }
}

double WeightedDigraph::total_weight() const {
    double sum = 0.0;
    for (const auto& nbrs : out_)
        for (const auto& [to, w] : nbrs) sum += w;
    return sum;
}

VertexId WeightedDigraph::add_vertex(std::string label) {
    auto [it, inserted] = index_.emplace(std::move(label), static_cast<VertexId>(labels_.size()));
    if (!inserted) throw std::invalid_argument("duplicate vertex label: " + it->first);
    labels_.push_back(it->first);
    out_.emplace_back();
    in_.emplace_back();
    return it->second;
}

std::optional<VertexId> WeightedDigraph::vertex_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void WeightedDigraph::check_vertex(VertexId v) const {
    if (v >= out_.size()) {
        throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range (n=" +
                                    std::to_string(out_.size()) + ")");
    }
}

void WeightedDigraph::add_edge(VertexId src, VertexId dst, double weight) {
    check_vertex(src);
    check_vertex(dst);
    if (src == dst) throw std::invalid_argument("self-loops are not allowed");
    if (!std::isfinite(weight) || !(weight > 0.0)) {
        throw std::invalid_argument("edge weight must be a positive finite number");
    }
    auto out_it = find_neighbor(out_[src], dst);
    if (out_it != out_[src].end() && out_it->first == dst) {
        out_it->second += weight;
        auto in_it = find_neighbor(in_[dst], src);
        in_it->second += weight;
        return;
    }
    out_[src].insert(out_it, {dst, weight});
    auto in_it = find_neighbor(in_[dst], src);
    in_[dst].insert(in_it, {src, weight});
    ++edge_count_;
}

bool WeightedDigraph::remove_edge(VertexId src, VertexId dst) {
    check_vertex(src);
    check_vertex(dst);
    auto out_it = find_neighbor(out_[src], dst);
    if (out_it == out_[src].end() || out_it->first != dst) return false;
    out_[src].erase(out_it);
    auto in_it = find_neighbor(in_[dst], src);
    in_[dst].erase(in_it);
    --edge_count_;
    return true;
}

void WeightedDigraph::set_weight(VertexId src, VertexId dst, double weight) {
    check_vertex(src);
    check_vertex(dst);
    if (!std::isfinite(weight) || !(weight > 0.0)) {
        throw std::invalid_argument("edge weight must be a positive finite number");
    }
    auto out_it = find_neighbor(out_[src], dst);
    if (out_it == out_[src].end() || out_it->first != dst) {
        throw std::invalid_argument("set_weight on missing edge");
    }
    out_it->second = weight;
    auto in_it = find_neighbor(in_[dst], src);
    in_it->second = weight;
}

bool WeightedDigraph::has_edge(VertexId src, VertexId dst) const {
    if (src >= out_.size() || dst >= out_.size()) return false;
    auto it = find_neighbor(out_[src], dst);
    return it != out_[src].end() && it->first == dst;
}

std::optional<double> WeightedDigraph::weight_of(VertexId src, VertexId dst) const {
    if (src >= out_.size() || dst >= out_.size()) return std::nullopt;
    auto it = find_neighbor(out_[src], dst);
    if (it == out_[src].end() || it->first != dst) return std::nullopt;
    return it->second;
}

std::vector<WeightedEdge> WeightedDigraph::edges() const {
    std::vector<WeightedEdge> all;
    all.reserve(edge_count_);
    for (VertexId v = 0; v < out_.size(); ++v) {
        for (const auto& [to, w] : out_[v]) all.push_back({v, to, w});
    }
    return all;
}

WeightedDigraph parse_edge_list(std::istream& in, ParseStats* stats) {
    WeightedDigraph g;
    ParseStats local;
    std::string line;
    std::size_t line_no = 0;

    auto intern = [&g](std::string_view label) {
        if (auto v = g.vertex_of(label)) return *v;
        return g.add_vertex(std::string(label));
    };

    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields[0].front() == '#') continue;
        if (fields.size() != 3) {
            throw ParseError(line_no, "expected 'src dst weight', got " +
                                          std::to_string(fields.size()) + " fields");
        }
        const double weight = parse_weight(fields[2], line_no);
        if (fields[0] == fields[1]) {
            // self-loops carry no ranking information
            intern(fields[0]);
            ++local.self_loops_dropped;
            continue;
        }
        const VertexId src = intern(fields[0]);
        const VertexId dst = intern(fields[1]);
        if (g.has_edge(src, dst)) ++local.duplicate_edges_merged;
        g.add_edge(src, dst, weight);
    }
    if (stats) *stats = local;
    return g;
}

void write_edge_list(std::ostream& out, const WeightedDigraph& g) {
    for (const WeightedEdge& e : g.edges()) {
        out << g.label_of(e.src) << ' ' << g.label_of(e.dst) << ' ' << format_g17(e.weight)
            << '\n';
    }
}

std::optional<CyclePath> find_cycle(const WeightedDigraph& g) {
    const std::size_t n = g.vertex_count();
    enum : std::uint8_t { kWhite = 0, kGray = 1, kBlack = 2 };
    std::vector<std::uint8_t> color(n, kWhite);
    std::vector<std::size_t> path_pos(n, 0);

    struct Frame {
        VertexId v;
        std::size_t next;  // index of the next out-neighbor to explore
    };
    std::vector<Frame> stack;
    std::vector<VertexId> path;

    for (VertexId root = 0; root < n; ++root) {
        if (color[root] != kWhite) continue;
        stack.push_back({root, 0});
        color[root] = kGray;
        path_pos[root] = path.size();
        path.push_back(root);

        while (!stack.empty()) {
            Frame& frame = stack.back();
            auto nbrs = g.out_edges(frame.v);
            if (frame.next < nbrs.size()) {
                const VertexId to = nbrs[frame.next].first;
                ++frame.next;
                if (color[to] == kWhite) {
                    color[to] = kGray;
                    path_pos[to] = path.size();
                    path.push_back(to);
                    stack.push_back({to, 0});
                } else if (color[to] == kGray) {
                    // back edge: the gray path from `to` onward closes a cycle
                    return CyclePath(path.begin() + static_cast<std::ptrdiff_t>(path_pos[to]),
                                     path.end());
                }
            } else {
                color[frame.v] = kBlack;
                path.pop_back();
                stack.pop_back();
            }
        }
    }
    return std::nullopt;
}

bool is_acyclic(const WeightedDigraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> indegree(n);
    std::vector<VertexId> ready;
    for (VertexId v = 0; v < n; ++v) {
        indegree[v] = g.in_degree(v);
        if (indegree[v] == 0) ready.push_back(v);
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
        const VertexId v = ready.back();
        ready.pop_back();
        ++seen;
        for (const auto& [to, w] : g.out_edges(v)) {
            if (--indegree[to] == 0) ready.push_back(to);
        }
    }
    return seen == n;
}

namespace detail {

bool reaches(const WeightedDigraph& g, VertexId from, VertexId to) {
    if (from == to) return true;
    const std::size_t n = g.vertex_count();
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<VertexId> stack{from};
    visited[from] = 1;
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (const auto& [next, w] : g.out_edges(v)) {
            if (next == to) return true;
            if (!visited[next]) {
                visited[next] = 1;
                stack.push_back(next);
            }
        }
    }
    return false;
}

}  // namespace detail

bool would_create_cycle(const WeightedDigraph& g, const WeightedEdge& edge) {
    if (edge.src >= g.vertex_count() || edge.dst >= g.vertex_count()) {
        throw std::invalid_argument("edge endpoints out of range");
    }
    if (!is_acyclic(g)) {
        throw std::invalid_argument("would_create_cycle requires an acyclic graph");
    }
    if (g.has_edge(edge.src, edge.dst)) {
        throw std::invalid_argument("edge is already present");
    }
    return detail::reaches(g, edge.dst, edge.src);
}

}  // namespace arcrank
