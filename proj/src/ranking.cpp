#include "arcrank/ranking.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "arcrank/format.hpp"

namespace arcrank {

double tiebreak_score(VertexId vertex, const WeightedDigraph& original) {
    if (vertex >= original.vertex_count()) {
        throw std::invalid_argument("vertex id out of range");
    }
    const auto out = original.out_edges(vertex);
    const auto in = original.in_edges(vertex);
    const std::size_t degree = out.size() + in.size();
    if (degree == 0) return 0.0;
    double net = 0.0;
    for (const auto& [to, w] : out) net += w;
    for (const auto& [from, w] : in) net -= w;
    return net / static_cast<double>(degree);
}

Ranking topological_rank(const WeightedDigraph& residual, const WeightedDigraph& original) {
    const std::size_t n = residual.vertex_count();
    if (original.vertex_count() != n) {
        throw std::invalid_argument("residual and original graphs have different vertex sets");
    }

    std::vector<double> tiebreak(n);
    for (VertexId v = 0; v < n; ++v) tiebreak[v] = tiebreak_score(v, original);

    // max-heap on (score, vertex id): highest score first, then highest id
    std::priority_queue<std::pair<double, VertexId>> ready;
    std::vector<std::size_t> indegree(n);
    for (VertexId v = 0; v < n; ++v) {
        indegree[v] = residual.in_degree(v);
        if (indegree[v] == 0) ready.push({tiebreak[v], v});
    }

    Ranking ranking;
    ranking.order.reserve(n);
    while (!ready.empty()) {
        const VertexId v = ready.top().second;
        ready.pop();
        ranking.order.push_back(v);
        for (const auto& [to, w] : residual.out_edges(v)) {
            if (--indegree[to] == 0) ready.push({tiebreak[to], to});
        }
    }
    if (ranking.order.size() != n) {
        throw std::invalid_argument("topological_rank requires an acyclic residual graph");
    }

    ranking.rank.assign(n, 0);
    ranking.scores.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const VertexId v = ranking.order[k];
        ranking.rank[v] = static_cast<int>(k) + 1;
        ranking.scores[v] = static_cast<double>(n - k);  // best vertex gets n
    }
    return ranking;
}

void write_ranking(std::ostream& out, const Ranking& ranking, const WeightedDigraph& graph) {
    for (const VertexId v : ranking.order) {
        out << graph.label_of(v) << ' ' << ranking.rank[v] << ' '
            << format_g17(ranking.scores[v]) << '\n';
    }
}

Ranking read_ranking(std::istream& in, const WeightedDigraph& graph) {
    const std::size_t n = graph.vertex_count();
    Ranking ranking;
    ranking.rank.assign(n, 0);
    ranking.scores.assign(n, 0.0);
    std::vector<char> seen(n, 0);

    std::string line;
    std::size_t line_no = 0;
    std::size_t entries = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::string label, rank_token, score_token;
        if (!(fields >> label)) continue;       // blank
        if (label.front() == '#') continue;     // comment
        if (first_content_line && label == "label") {
            first_content_line = false;         // CSV header
            continue;
        }
        first_content_line = false;
        if (!(fields >> rank_token >> score_token)) {
            throw ParseError(line_no, "expected 'label rank score'");
        }
        std::string extra;
        if (fields >> extra) throw ParseError(line_no, "expected 'label rank score'");

        const auto v = graph.vertex_of(label);
        if (!v) throw ParseError(line_no, "label '" + label + "' is not in the graph");
        if (seen[*v]) throw ParseError(line_no, "duplicate entry for label '" + label + "'");

        int rank_value = 0;
        auto [rp, rec] = std::from_chars(rank_token.data(),
                                         rank_token.data() + rank_token.size(), rank_value);
        if (rec != std::errc{} || rp != rank_token.data() + rank_token.size()) {
            throw ParseError(line_no, "rank is not an integer: '" + rank_token + "'");
        }
        if (rank_value < 1 || static_cast<std::size_t>(rank_value) > n) {
            throw ValidationError(line_no, "rank " + rank_token + " outside 1.." +
                                               std::to_string(n));
        }
        double score_value = 0.0;
        auto [sp, sec] = std::from_chars(score_token.data(),
                                         score_token.data() + score_token.size(), score_value);
        if (sec != std::errc{} || sp != score_token.data() + score_token.size()) {
            throw ParseError(line_no, "score is not a number: '" + score_token + "'");
        }

        seen[*v] = 1;
        ranking.rank[*v] = rank_value;
        ranking.scores[*v] = score_value;
        ++entries;
    }

    if (entries != n) {
        throw std::runtime_error("ranking covers " + std::to_string(entries) + " of " +
                                 std::to_string(n) + " vertices");
    }
    ranking.order.assign(n, 0);
    std::vector<char> rank_used(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) {
        const int r = ranking.rank[v];
        if (rank_used[r]) {
            throw std::runtime_error("rank " + std::to_string(r) + " assigned twice");
        }
        rank_used[r] = 1;
        ranking.order[static_cast<std::size_t>(r) - 1] = v;
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!(ranking.scores[ranking.order[k]] > ranking.scores[ranking.order[k + 1]])) {
            throw std::runtime_error("scores do not strictly decrease with rank");
        }
    }
    return ranking;
}

}  // namespace arcrank
