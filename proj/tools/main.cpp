#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "arcrank/bench.hpp"

namespace {

struct CommonFlags {
    bool optimize_ratio = false;
    std::size_t sweeps = 40;
    std::size_t ternary_steps = 100;
    double loss_epsilon = 1e-6;
    double zero_threshold = 1e-9;
    std::string output;
    std::string format = "table";
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_flag("--optimize-ratio", flags.optimize_ratio,
                  "refine scores with the order-preserving ternary-search optimizer");
    cmd->add_option("--sweeps", flags.sweeps, "optimizer sweeps over the score vector")
        ->capture_default_str();
    cmd->add_option("--ternary-steps", flags.ternary_steps, "ternary iterations per vertex")
        ->capture_default_str();
    cmd->add_option("--loss-epsilon", flags.loss_epsilon, "epsilon used by the ratio loss")
        ->capture_default_str();
    cmd->add_option("--zero-threshold", flags.zero_threshold,
                    "residual weight at/below which a cancelled edge is deleted")
        ->capture_default_str();
    cmd->add_option("--output", flags.output, "write the ranking (rank) or CSV report (suite) here");
    cmd->add_option("--format", flags.format, "stdout format")
        ->check(CLI::IsMember({"csv", "table"}))
        ->capture_default_str();
}

arcrank::PipelineOptions pipeline_options(const CommonFlags& flags) {
    arcrank::PipelineOptions options;
    options.optimize_ratio = flags.optimize_ratio;
    options.zero_threshold = flags.zero_threshold;
    options.loss_epsilon = flags.loss_epsilon;
    options.optimizer.num_iterations = flags.sweeps;
    options.optimizer.steps = flags.ternary_steps;
    return options;
}

int cmd_rank(const std::string& edge_list, const CommonFlags& flags) {
    const arcrank::PipelineResult result =
        arcrank::run_pipeline(std::filesystem::path(edge_list), pipeline_options(flags));

    const std::vector<arcrank::SuiteRow> rows{{result.record, true, ""}};
    if (flags.format == "csv") {
        arcrank::write_records_csv(std::cout, rows, false);
    } else {
        arcrank::write_records_table(std::cout, rows, false);
    }

    // the graph is reparsed only to recover labels for the ranking output
    std::ifstream in(arcrank::resolve_dataset_path(edge_list));
    const arcrank::WeightedDigraph graph = arcrank::parse_edge_list(in);

    if (!flags.output.empty()) {
        std::ofstream out(flags.output);
        if (!out) throw std::runtime_error("cannot write ranking to " + flags.output);
        if (flags.format == "csv") arcrank::write_ranking_csv(out, result.ranking, graph);
        else arcrank::write_ranking(out, result.ranking, graph);
    } else {
        std::cout << '\n';
        if (flags.format == "csv") arcrank::write_ranking_csv(std::cout, result.ranking, graph);
        else arcrank::write_ranking(std::cout, result.ranking, graph);
    }
    return 0;
}

int cmd_suite(const std::string& manifest, const CommonFlags& flags) {
    const arcrank::SuiteResult suite =
        arcrank::run_suite(std::filesystem::path(manifest), pipeline_options(flags));

    if (!flags.output.empty()) {
        std::ofstream out(flags.output);
        if (!out) throw std::runtime_error("cannot write report to " + flags.output);
        arcrank::write_records_csv(out, suite.rows, true);
    }
    if (flags.format == "csv") {
        arcrank::write_records_csv(std::cout, suite.rows, true);
    } else {
        arcrank::write_records_table(std::cout, suite.rows, true);
    }
    return suite.any_failed ? 2 : 0;
}

int cmd_losses(const std::string& edge_list, const std::string& ranking_file,
               const CommonFlags& flags) {
    std::ifstream graph_in(arcrank::resolve_dataset_path(edge_list));
    if (!graph_in) throw std::runtime_error("cannot open file: " + edge_list);
    const arcrank::WeightedDigraph graph = arcrank::parse_edge_list(graph_in);

    std::ifstream ranking_in(ranking_file);
    if (!ranking_in) throw std::runtime_error("cannot open ranking file: " + ranking_file);
    const arcrank::Ranking ranking = arcrank::read_ranking(ranking_in, graph);

    const arcrank::ComparisonMatrix matrix(graph);
    const arcrank::LossReport report =
        arcrank::compute_losses(graph, matrix, ranking, flags.loss_epsilon);
    if (flags.format == "csv") arcrank::write_loss_report_csv(std::cout, report);
    else arcrank::write_loss_report_table(std::cout, report);
    return 0;
}

int cmd_oracle_check(const arcrank::OracleCheckOptions& options) {
    const arcrank::OracleCheckReport report = arcrank::run_oracle_check(options);
    arcrank::write_oracle_report(std::cout, report);
    return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rankings from weighted pairwise-comparison graphs via feedback arc sets"};
    app.require_subcommand(1);
    app.footer("Relative dataset paths are also looked up under $" +
               std::string(arcrank::kDataDirEnvVar) + ".");

    std::string edge_list;
    std::string manifest;
    std::string ranking_file;
    CommonFlags rank_flags, suite_flags, losses_flags;
    arcrank::OracleCheckOptions oracle_options;

    CLI::App* rank = app.add_subcommand(
        "rank", "rank one edge list: solve, order, evaluate losses");
    rank->add_option("edgelist", edge_list, "edge-list file (src dst weight per line)")
        ->required();
    add_common_flags(rank, rank_flags);

    CLI::App* suite = app.add_subcommand(
        "suite", "run every dataset of a name<TAB>path manifest and tabulate the results");
    suite->add_option("manifest", manifest, "manifest file")->required();
    add_common_flags(suite, suite_flags);

    CLI::App* losses = app.add_subcommand(
        "losses", "evaluate the five losses for a ranking produced elsewhere");
    losses->add_option("edgelist", edge_list, "edge-list file")->required();
    losses->add_option("ranking", ranking_file, "ranking file (label rank score per line)")
        ->required();
    losses->add_option("--loss-epsilon", losses_flags.loss_epsilon,
                       "epsilon used by the ratio loss")
        ->capture_default_str();
    losses->add_option("--format", losses_flags.format, "stdout format")
        ->check(CLI::IsMember({"csv", "table"}))
        ->capture_default_str();

    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "cross-check the heuristic against the exhaustive solver");
    oracle->add_option("--instances", oracle_options.instances, "random instances to run")
        ->capture_default_str();
    oracle->add_option("--max-vertices", oracle_options.max_vertices, "vertex cap (<= 8)")
        ->capture_default_str();
    oracle->add_option("--edge-prob", oracle_options.edge_prob, "edge probability")
        ->capture_default_str();
    oracle->add_option("--seed", oracle_options.seed, "random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (rank->parsed()) return cmd_rank(edge_list, rank_flags);
        if (suite->parsed()) return cmd_suite(manifest, suite_flags);
        if (losses->parsed()) return cmd_losses(edge_list, ranking_file, losses_flags);
        if (oracle->parsed()) return cmd_oracle_check(oracle_options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
