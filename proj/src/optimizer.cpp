#include "arcrank/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace arcrank {

namespace {

/// Precomputed comparison support for fast ratio-loss probes. The weight-side
/// ratio M1/M2 of each support pair is fixed; only the score side varies, and
/// changing one vertex's score touches only the pairs involving that vertex.
/// The solver-facing loss value is total / t, identical to loss_ratio.
class RatioSupport {
public:
    RatioSupport(const ComparisonMatrix& matrix, double epsilon) : epsilon_(epsilon) {
        const auto& support = matrix.skew_support();
        entries_.reserve(support.size());
        by_vertex_.resize(matrix.size());
        std::uint32_t k = 0;
        for (const auto& e : support) {
            entries_.push_back(
                {e.row, e.col, (e.forward - e.backward) / (e.forward + e.backward + epsilon)});
            by_vertex_[e.row].push_back(k);
            by_vertex_[e.col].push_back(k);
            ++k;
        }
    }

    bool empty() const { return entries_.empty(); }
    std::size_t t() const { return entries_.size(); }

    /// Sum of the terms touching `v`, with scores[v] replaced by `candidate`.
    double vertex_sum(std::span<const double> scores, VertexId v, double candidate) const {
        double sum = 0.0;
        for (const std::uint32_t k : by_vertex_[v]) {
            const Entry& e = entries_[k];
            const double ri = (e.i == v) ? candidate : scores[e.i];
            const double rj = (e.j == v) ? candidate : scores[e.j];
            const double d = (ri - rj) / (ri + rj + epsilon_) - e.mratio;
            sum += d * d;
        }
        return sum;
    }

private:
    struct Entry {
        VertexId i;
        VertexId j;
        double mratio;  // (w_ij - w_ji) / (w_ij + w_ji + epsilon)
    };

    std::vector<Entry> entries_;
    std::vector<std::vector<std::uint32_t>> by_vertex_;
    double epsilon_;
};

/// Core ternary search. Comparing the vertex-local sums decides exactly like
/// comparing full losses: the remaining terms do not depend on scores[index].
double ternary_step(const RatioSupport& support, std::vector<double>& scores, VertexId index,
                    double lower, double upper, const OptimizerConfig& config) {
    for (std::size_t step = 0; step < config.steps; ++step) {
        const double mid1 = lower + (upper - lower) / 3.0;
        const double mid2 = upper - (upper - lower) / 3.0;
        const double loss1 = support.vertex_sum(scores, index, mid1);
        const double loss2 = support.vertex_sum(scores, index, mid2);
        if (loss1 < loss2) {
            upper = mid2;
        } else if (loss1 > loss2) {
            lower = mid1;
        } else {
            lower = mid1;
            upper = mid2;
        }
        if (upper - lower < config.epsilon_stop) break;
    }
    scores[index] = (lower + upper) / 2.0;
    return scores[index];
}

void validate_config(const OptimizerConfig& config) {
    if (config.steps == 0) throw std::invalid_argument("steps must be positive");
    if (!(config.epsilon_stop > 0.0)) {
        throw std::invalid_argument("epsilon_stop must be positive");
    }
    if (!(config.loss_epsilon > 0.0)) {
        throw std::invalid_argument("loss_epsilon must be positive");
    }
}

}  // namespace

double ternary_search_vertex(const ComparisonMatrix& matrix, std::vector<double>& scores,
                             VertexId index, double lower, double upper,
                             const OptimizerConfig& config) {
    validate_config(config);
    if (scores.size() != matrix.size()) {
        throw std::invalid_argument("score vector length does not match vertex count");
    }
    if (index >= scores.size()) throw std::invalid_argument("vertex index out of range");
    if (!(lower < upper)) throw std::invalid_argument("ternary search needs lower < upper");

    RatioSupport support(matrix, config.loss_epsilon);
    return ternary_step(support, scores, index, lower, upper, config);
}

std::vector<double> minimize_ratio_loss(const ComparisonMatrix& matrix,
                                        std::vector<double> scores,
                                        const OptimizerConfig& config) {
    validate_config(config);
    const std::size_t n = scores.size();
    if (n != matrix.size()) {
        throw std::invalid_argument("score vector length does not match vertex count");
    }
    {
        std::vector<double> sorted = scores;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("scores must be tie-free: neighbor bounds would be "
                                        "ambiguous");
        }
    }

    RatioSupport support(matrix, config.loss_epsilon);
    if (support.empty() || n == 0) return scores;  // no comparisons, nothing to improve

    std::vector<VertexId> by_score(n);
    std::iota(by_score.begin(), by_score.end(), 0);

    for (std::size_t sweep = 0; sweep < config.num_iterations; ++sweep) {
        std::sort(by_score.begin(), by_score.end(),
                  [&scores](VertexId a, VertexId b) { return scores[a] < scores[b]; });
        for (std::size_t pos = 0; pos < n; ++pos) {
            const VertexId index = by_score[pos];
            const double lower0 = (pos == 0) ? 0.0 : scores[by_score[pos - 1]];
            const double upper0 =
                (pos + 1 == n) ? scores[by_score[n - 1]] + 1.0 : scores[by_score[pos + 1]];
            // shrink the interval so the update can never tie a neighbor,
            // which would change the induced ranking
            const double pad =
                1e-12 * std::max({1.0, std::abs(lower0), std::abs(upper0)});
            const double lower = lower0 + pad;
            const double upper = upper0 - pad;
            if (!(lower < upper)) continue;

            const double old_value = scores[index];
            const double before =
                config.guard_monotone ? support.vertex_sum(scores, index, old_value) : 0.0;
            ternary_step(support, scores, index, lower, upper, config);
            if (config.guard_monotone) {
                const double after = support.vertex_sum(scores, index, scores[index]);
                if (after > before) scores[index] = old_value;
            }
        }
    }
    return scores;
}

}  // namespace arcrank
