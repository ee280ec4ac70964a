#include "arcrank/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arcrank {

namespace {

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

void check_scores(const ComparisonMatrix& matrix, std::span<const double> scores) {
    if (scores.size() != matrix.size()) {
        throw std::invalid_argument("score vector length does not match vertex count");
    }
}

void check_support(const ComparisonMatrix& matrix) {
    if (matrix.comparison_count() == 0) {
        throw std::domain_error("loss undefined: no comparisons (t = 0)");
    }
}

void check_ranking(const WeightedDigraph& graph, const Ranking& ranking) {
    if (ranking.rank.size() != graph.vertex_count()) {
        throw std::invalid_argument("ranking does not match the graph's vertex count");
    }
}

}  // namespace

ComparisonMatrix::ComparisonMatrix(const WeightedDigraph& g) {
    const std::size_t n = g.vertex_count();
    rows_.resize(n);
    for (VertexId v = 0; v < n; ++v) {
        auto nbrs = g.out_edges(v);
        rows_[v].assign(nbrs.begin(), nbrs.end());
    }
    for (VertexId u = 0; u < n; ++u) {
        for (const auto& [v, w_uv] : rows_[u]) {
            const double w_vu = at(v, u);
            if (w_vu > 0.0 && v < u) continue;  // pair already handled from the other side
            const double diff = w_uv - w_vu;
            if (diff != 0.0) {
                support_.push_back({u, v, w_uv, w_vu});
                support_.push_back({v, u, w_vu, w_uv});
            }
        }
    }
    std::sort(support_.begin(), support_.end(),
              [](const SkewEntry& a, const SkewEntry& b) {
                  if (a.row != b.row) return a.row < b.row;
                  return a.col < b.col;
              });
}

double ComparisonMatrix::at(VertexId i, VertexId j) const {
    if (i >= rows_.size() || j >= rows_.size()) return 0.0;
    const auto& row = rows_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const std::pair<VertexId, double>& nb, VertexId key) {
                                   return nb.first < key;
                               });
    if (it == row.end() || it->first != j) return 0.0;
    return it->second;
}

double loss_naive(const ComparisonMatrix& matrix, std::span<const double> scores) {
    check_scores(matrix, scores);
    check_support(matrix);
    std::size_t upsets = 0;
    for (const auto& e : matrix.skew_support()) {
        const int score_sign = sign_of(scores[e.row] - scores[e.col]);
        const int weight_sign = sign_of(e.forward - e.backward);
        if (score_sign != weight_sign) ++upsets;
    }
    return static_cast<double>(upsets) / static_cast<double>(matrix.comparison_count());
}

double loss_simple(const ComparisonMatrix& matrix, std::span<const double> scores) {
    check_scores(matrix, scores);
    check_support(matrix);
    // Frobenius norm restricted to the comparison support: pairs that were
    // never compared (sign(M1) = 0) contribute nothing, a score tie on a
    // compared pair contributes 1, a reversed pair contributes 4.
    std::size_t sum_sq = 0;
    for (const auto& e : matrix.skew_support()) {
        const int d = sign_of(scores[e.row] - scores[e.col]) - sign_of(e.forward - e.backward);
        sum_sq += static_cast<std::size_t>(d * d);
    }
    return static_cast<double>(sum_sq) / static_cast<double>(matrix.comparison_count());
}

double loss_ratio(const ComparisonMatrix& matrix, std::span<const double> scores,
                  double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    check_scores(matrix, scores);
    check_support(matrix);
    double sum = 0.0;
    for (const auto& e : matrix.skew_support()) {
        const double t1 = scores[e.row] - scores[e.col];
        const double t2 = scores[e.row] + scores[e.col] + epsilon;
        if (t2 == 0.0) {
            throw std::domain_error("ratio loss undefined: zero score normalizer");
        }
        const double m = (e.forward - e.backward) / (e.forward + e.backward + epsilon);
        const double d = t1 / t2 - m;
        sum += d * d;
    }
    return sum / static_cast<double>(matrix.comparison_count());
}

double loss_weighted(const WeightedDigraph& graph, const Ranking& ranking) {
    check_ranking(graph, ranking);
    double total = 0.0;
    double violated = 0.0;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        for (const auto& [to, w] : graph.out_edges(v)) {
            total += w;
            if (ranking.rank[v] > ranking.rank[to]) violated += w;
        }
    }
    if (!(total > 0.0)) {
        throw std::domain_error("weighted loss undefined: graph has no edges");
    }
    return violated / total;
}

double loss_margin(const WeightedDigraph& graph, const Ranking& ranking) {
    check_ranking(graph, ranking);
    double numerator = 0.0;
    double denominator = 0.0;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        for (const auto& [to, w] : graph.out_edges(v)) {
            const double gap = static_cast<double>(ranking.rank[v] - ranking.rank[to]);
            denominator += w * std::abs(gap);
            if (gap > 0.0) numerator += w * gap;
        }
    }
    if (!(denominator > 0.0)) {
        throw std::domain_error("margin loss undefined: no rank-separated comparisons");
    }
    return numerator / denominator;
}

LossReport compute_losses(const WeightedDigraph& graph, const ComparisonMatrix& matrix,
                          const Ranking& ranking, double epsilon) {
    LossReport report;
    report.naive = loss_naive(matrix, ranking.scores);
    report.simple = loss_simple(matrix, ranking.scores);
    report.ratio = loss_ratio(matrix, ranking.scores, epsilon);
    report.weighted = loss_weighted(graph, ranking);
    report.margin = loss_margin(graph, ranking);
    report.t = matrix.comparison_count();
    report.epsilon = epsilon;
    return report;
}

}  // namespace arcrank
