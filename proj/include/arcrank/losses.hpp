#ifndef ARCRANK_LOSSES_HPP
#define ARCRANK_LOSSES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "arcrank/graph.hpp"
#include "arcrank/ranking.hpp"

namespace arcrank {

/// Sparse view of the pairwise comparison matrix A (A[i][j] = w_ij, 0 when the
/// edge is absent, zero diagonal). Precomputes the support of A - A^T: the
/// ordered pairs (i, j) with w_ij != w_ji, sorted by (row, col). The support
/// size is t, the comparison count used by the naive/simple/ratio losses.
/// Never materializes the dense n x n matrix.
class ComparisonMatrix {
public:
    struct SkewEntry {
        VertexId row = 0;
        VertexId col = 0;
        double forward = 0.0;   // A[row][col]
        double backward = 0.0;  // A[col][row]
    };

    explicit ComparisonMatrix(const WeightedDigraph& g);

    std::size_t size() const noexcept { return rows_.size(); }
    double at(VertexId i, VertexId j) const;
    const std::vector<SkewEntry>& skew_support() const noexcept { return support_; }
    std::size_t comparison_count() const noexcept { return support_.size(); }  // t

private:
    std::vector<std::vector<std::pair<VertexId, double>>> rows_;
    std::vector<SkewEntry> support_;
};

/// Fraction of comparison pairs whose score order contradicts the weight
/// order: (1/t) sum over support of [sign(r_i - r_j) != sign(w_ij - w_ji)].
double loss_naive(const ComparisonMatrix& matrix, std::span<const double> scores);

/// ||sign(T1) - sign(M1)||_F^2 / t over the comparison support, so a score
/// tie on a compared pair costs 1 and a reversed pair costs 4. Equals
/// 4 * loss_naive whenever the scores are tie-free.
double loss_simple(const ComparisonMatrix& matrix, std::span<const double> scores);

/// Squared mismatch of normalized differences:
/// (1/t) sum over support of ((r_i - r_j)/(r_i + r_j + eps)
///                            - (w_ij - w_ji)/(w_ij + w_ji + eps))^2.
double loss_ratio(const ComparisonMatrix& matrix, std::span<const double> scores,
                  double epsilon);

/// Weight of ranking-violated edges over total edge weight.
double loss_weighted(const WeightedDigraph& graph, const Ranking& ranking);

/// Rank-distance-weighted violation mass:
/// sum over violated edges of w * (rank gap) over sum over all edges of
/// w * |rank gap|.
double loss_margin(const WeightedDigraph& graph, const Ranking& ranking);

/// All five losses for one (graph, ranking) pair.
struct LossReport {
    double naive = 0.0;
    double simple = 0.0;
    double ratio = 0.0;
    double weighted = 0.0;
    double margin = 0.0;
    std::size_t t = 0;      // nonzero entries of A - A^T (ordered pairs)
    double epsilon = 0.0;   // epsilon used by the ratio loss
};

LossReport compute_losses(const WeightedDigraph& graph, const ComparisonMatrix& matrix,
                          const Ranking& ranking, double epsilon);

}  // namespace arcrank

#endif
