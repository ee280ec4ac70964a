#ifndef ARCRANK_OPTIMIZER_HPP
#define ARCRANK_OPTIMIZER_HPP

#include <cstddef>
#include <vector>

#include "arcrank/losses.hpp"

namespace arcrank {

struct OptimizerConfig {
    std::size_t num_iterations = 40;  // outer sweeps over the score vector
    std::size_t steps = 100;          // ternary iterations per vertex
    double epsilon_stop = 1e-9;       // stop once the search interval is this narrow
    double loss_epsilon = 1e-6;       // epsilon fed to the ratio loss
    bool guard_monotone = true;       // revert any update that raises total ratio loss
};

/// One ternary search of the ratio loss as a function of scores[index] over
/// [lower, upper], all other scores fixed. Writes the refined value into
/// scores[index] and returns it. The result always lies inside the interval.
double ternary_search_vertex(const ComparisonMatrix& matrix, std::vector<double>& scores,
                             VertexId index, double lower, double upper,
                             const OptimizerConfig& config);

/// Sweeps the vertices in ascending score order, ternary-searching each score
/// between its current neighbors (first element from 0, last element up to
/// max + 1). Updates stay strictly between neighbors, so the induced ranking
/// -- and with it the naive and simple losses -- never changes; only the
/// ratio loss can improve. Scores must be tie-free on entry.
std::vector<double> minimize_ratio_loss(const ComparisonMatrix& matrix,
                                        std::vector<double> scores,
                                        const OptimizerConfig& config);

}  // namespace arcrank

#endif
