#ifndef ARCRANK_BENCH_HPP
#define ARCRANK_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arcrank/losses.hpp"
#include "arcrank/optimizer.hpp"
#include "arcrank/ranking.hpp"
#include "arcrank/solver.hpp"

namespace arcrank {

/// One benchmark row: dataset shape, the loss values, and the wall-clock time
/// of the solve + rank phase (parsing, loss evaluation and report emission are
/// excluded from the timer).
struct BenchRecord {
    std::string dataset_name;
    std::size_t n_vertices = 0;
    std::size_t n_edges = 0;
    double naive = 0.0;
    double simple = 0.0;
    double ratio_initial = 0.0;
    std::optional<double> ratio_optimized;
    double removed_weight = 0.0;
    double wall_time_seconds = 0.0;
};

struct PipelineOptions {
    bool optimize_ratio = false;
    double zero_threshold = 1e-9;
    double loss_epsilon = 1e-6;   // used for the ratio loss and the optimizer
    OptimizerConfig optimizer{};  // loss_epsilon above overrides the field inside
};

/// What one end-to-end run produces. `losses` describes the returned ranking
/// (so after optimization when it ran); the record keeps both ratio values.
struct PipelineResult {
    BenchRecord record;
    Ranking ranking;
    LossReport losses;
};

/// parse -> solve_local_ratio -> topological_rank -> losses -> optionally
/// minimize_ratio_loss. Errors carry the dataset name.
PipelineResult run_pipeline(const std::string& dataset_name, const WeightedDigraph& graph,
                            const PipelineOptions& options);
PipelineResult run_pipeline(const std::filesystem::path& edge_list_path,
                            const PipelineOptions& options,
                            std::optional<std::string> dataset_name = std::nullopt);

struct SuiteRow {
    BenchRecord record;
    bool ok = true;
    std::string error;
};

struct SuiteResult {
    std::vector<SuiteRow> rows;
    bool any_failed = false;
};

/// Runs every `name<TAB>path` entry of the manifest; a failing dataset becomes
/// an error row and the suite continues. An unreadable or malformed manifest
/// is fatal.
SuiteResult run_suite(const std::filesystem::path& manifest_path, const PipelineOptions& options);

struct OracleCheckOptions {
    std::size_t instances = 500;
    std::size_t max_vertices = 6;  // must be <= 8 (exhaustive oracle)
    double edge_prob = 0.3;
    std::uint64_t seed = 1;
    double weight_low = 1.0;
    double weight_high = 10.0;
    bool integer_weights = true;
};

struct OracleCheckReport {
    std::size_t instances = 0;
    std::size_t cyclic_instances = 0;  // instances where the exact optimum is > 0
    double worst_ratio = 0.0;          // max heuristic/exact removed weight
    bool passed = true;
    std::string failure_message;
    std::string failure_dump_path;     // edge list of the failing instance, for replay
};

/// Random-instance cross-check of the heuristic against the exhaustive
/// solver: result invariants (acyclic residual, edge partition, reinsertion
/// maximality) plus removed-weight dominance. Stops at the first failure and
/// serializes that instance.
OracleCheckReport run_oracle_check(const OracleCheckOptions& options);

/// "" when the result satisfies all FeedbackArcResult invariants against the
/// original graph, else a description of the first violation.
std::string verify_feedback_arc_result(const WeightedDigraph& original,
                                       const FeedbackArcResult& result);

/// Environment variable naming the default dataset directory ("ARCRANK_DATA_DIR").
extern const char* const kDataDirEnvVar;

/// Returns the path itself when it exists; otherwise, for relative paths,
/// tries $ARCRANK_DATA_DIR/<path>.
std::filesystem::path resolve_dataset_path(const std::filesystem::path& path);

// Report writers. CSV carries full precision; tables display two decimals.
// Both contain the same numeric values.
void write_records_csv(std::ostream& out, const std::vector<SuiteRow>& rows,
                       bool append_average);
void write_records_table(std::ostream& out, const std::vector<SuiteRow>& rows,
                         bool append_average);
void write_ranking_csv(std::ostream& out, const Ranking& ranking, const WeightedDigraph& graph);
void write_loss_report_csv(std::ostream& out, const LossReport& report);
void write_loss_report_table(std::ostream& out, const LossReport& report);
void write_oracle_report(std::ostream& out, const OracleCheckReport& report);

}  // namespace arcrank

#endif
