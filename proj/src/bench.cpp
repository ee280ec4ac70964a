#include "arcrank/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

#include "arcrank/format.hpp"
#include "arcrank/random_graphs.hpp"

namespace arcrank {

const char* const kDataDirEnvVar = "ARCRANK_DATA_DIR";

namespace {

namespace fs = std::filesystem;

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (const char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string strip_prefix(const std::string& text, const std::string& prefix) {
    if (text.size() >= prefix.size() && text.compare(0, prefix.size(), prefix) == 0) {
        return text.substr(prefix.size());
    }
    return text;
}

struct AverageRow {
    double vertices = 0.0;
    double edges = 0.0;
    double naive = 0.0;
    double simple = 0.0;
    double ratio_initial = 0.0;
    std::optional<double> ratio_optimized;
    double removed_weight = 0.0;
    double wall_time = 0.0;
    std::size_t count = 0;
};

std::optional<AverageRow> averages_of(const std::vector<SuiteRow>& rows) {
    AverageRow avg;
    std::size_t optimized_count = 0;
    double optimized_sum = 0.0;
    for (const SuiteRow& row : rows) {
        if (!row.ok) continue;
        const BenchRecord& r = row.record;
        avg.vertices += static_cast<double>(r.n_vertices);
        avg.edges += static_cast<double>(r.n_edges);
        avg.naive += r.naive;
        avg.simple += r.simple;
        avg.ratio_initial += r.ratio_initial;
        if (r.ratio_optimized) {
            optimized_sum += *r.ratio_optimized;
            ++optimized_count;
        }
        avg.removed_weight += r.removed_weight;
        avg.wall_time += r.wall_time_seconds;
        ++avg.count;
    }
    if (avg.count == 0) return std::nullopt;
    const double denom = static_cast<double>(avg.count);
    avg.vertices /= denom;
    avg.edges /= denom;
    avg.naive /= denom;
    avg.simple /= denom;
    avg.ratio_initial /= denom;
    avg.removed_weight /= denom;
    avg.wall_time /= denom;
    if (optimized_count > 0) {
        avg.ratio_optimized = optimized_sum / static_cast<double>(optimized_count);
    }
    return avg;
}

std::string pipeline_error_for(const std::string& name, const std::exception& e) {
    return name + ": " + e.what();
}

}  // namespace

PipelineResult run_pipeline(const std::string& dataset_name, const WeightedDigraph& graph,
                            const PipelineOptions& options) {
    using clock = std::chrono::steady_clock;

    PipelineResult result;
    result.record.dataset_name = dataset_name;
    result.record.n_vertices = graph.vertex_count();
    result.record.n_edges = graph.edge_count();

    try {
        const auto solve_start = clock::now();
        FeedbackArcResult fas = solve_local_ratio(graph, options.zero_threshold);
        Ranking ranking = topological_rank(fas.residual_dag, graph);
        const auto solve_end = clock::now();

        result.record.removed_weight = fas.removed_weight;
        result.record.wall_time_seconds =
            std::chrono::duration<double>(solve_end - solve_start).count();

        ComparisonMatrix matrix(graph);
        result.losses = compute_losses(graph, matrix, ranking, options.loss_epsilon);
        result.record.naive = result.losses.naive;
        result.record.simple = result.losses.simple;
        result.record.ratio_initial = result.losses.ratio;

        if (options.optimize_ratio) {
            OptimizerConfig config = options.optimizer;
            config.loss_epsilon = options.loss_epsilon;
            ranking.scores = minimize_ratio_loss(matrix, std::move(ranking.scores), config);
            const double optimized = loss_ratio(matrix, ranking.scores, options.loss_epsilon);
            result.record.ratio_optimized = optimized;
            result.losses.ratio = optimized;
        }
        result.ranking = std::move(ranking);
    } catch (const std::exception& e) {
        throw std::runtime_error(pipeline_error_for(dataset_name, e));
    }
    return result;
}

PipelineResult run_pipeline(const std::filesystem::path& edge_list_path,
                            const PipelineOptions& options,
                            std::optional<std::string> dataset_name) {
    const std::string name = dataset_name ? *dataset_name : edge_list_path.stem().string();
    WeightedDigraph graph;
    try {
        const fs::path resolved = resolve_dataset_path(edge_list_path);
        std::ifstream in(resolved);
        if (!in) {
            std::string message = "cannot open file: " + edge_list_path.string();
            if (resolved != edge_list_path) message += " (resolved to " + resolved.string() + ")";
            else if (edge_list_path.is_relative() && std::getenv(kDataDirEnvVar)) {
                message += " (also tried $" + std::string(kDataDirEnvVar) + ")";
            }
            throw std::runtime_error(message);
        }
        ParseStats stats;
        graph = parse_edge_list(in, &stats);
        if (stats.self_loops_dropped > 0) {
            std::cerr << name << ": warning: dropped " << stats.self_loops_dropped
                      << " self-loop(s)\n";
        }
    } catch (const std::exception& e) {
        throw std::runtime_error(pipeline_error_for(name, e));
    }
    return run_pipeline(name, graph, options);
}

fs::path resolve_dataset_path(const fs::path& path) {
    std::error_code ec;
    if (fs::exists(path, ec)) return path;
    if (path.is_relative()) {
        if (const char* dir = std::getenv(kDataDirEnvVar)) {
            fs::path candidate = fs::path(dir) / path;
            if (fs::exists(candidate, ec)) return candidate;
        }
    }
    return path;
}

SuiteResult run_suite(const std::filesystem::path& manifest_path,
                      const PipelineOptions& options) {
    std::ifstream in(manifest_path);
    if (!in) {
        throw std::runtime_error("cannot open manifest: " + manifest_path.string());
    }

    SuiteResult suite;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() &&
               (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        const std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        const std::size_t tab = line.find('\t', first);
        if (tab == std::string::npos) {
            throw ParseError(line_no, "manifest entry must be name<TAB>path");
        }
        const std::string name = line.substr(first, tab - first);
        std::string path = line.substr(tab + 1);
        const std::size_t path_start = path.find_first_not_of(" \t");
        if (name.empty() || path_start == std::string::npos) {
            throw ParseError(line_no, "manifest entry must be name<TAB>path");
        }
        path = path.substr(path_start);

        SuiteRow row;
        row.record.dataset_name = name;
        try {
            row.record = run_pipeline(fs::path(path), options, name).record;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = strip_prefix(e.what(), name + ": ");
            suite.any_failed = true;
        }
        suite.rows.push_back(std::move(row));
    }
    return suite;
}

std::string verify_feedback_arc_result(const WeightedDigraph& original,
                                       const FeedbackArcResult& result) {
    if (!is_acyclic(result.residual_dag)) return "residual graph is cyclic";

    // removed + surviving must reproduce the original edges, weights included
    std::vector<WeightedEdge> combined = result.residual_dag.edges();
    combined.insert(combined.end(), result.removed_edges.begin(), result.removed_edges.end());
    auto by_pair = [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.src != b.src) return a.src < b.src;
        return a.dst < b.dst;
    };
    std::sort(combined.begin(), combined.end(), by_pair);
    const std::vector<WeightedEdge> expected = original.edges();
    if (combined.size() != expected.size()) {
        return "removed and surviving edges do not partition the edge set";
    }
    for (std::size_t k = 0; k < combined.size(); ++k) {
        if (!(combined[k] == expected[k])) {
            return "removed and surviving edges do not partition the edge set";
        }
    }

    for (const WeightedEdge& e : result.removed_edges) {
        if (!would_create_cycle(result.residual_dag, e)) {
            return "removed edge (" + original.label_of(e.src) + " -> " +
                   original.label_of(e.dst) + ") could be reinserted";
        }
    }

    double sum = 0.0;
    for (const WeightedEdge& e : result.removed_edges) sum += e.weight;
    if (sum != result.removed_weight) return "removed_weight does not match removed_edges";
    return "";
}

OracleCheckReport run_oracle_check(const OracleCheckOptions& options) {
    if (options.max_vertices > 8) {
        throw std::invalid_argument("max_vertices must be at most 8 for the exhaustive oracle");
    }
    std::mt19937_64 rng(options.seed);
    OracleCheckReport report;

    for (std::size_t k = 0; k < options.instances; ++k) {
        RandomGraphOptions gopt;
        gopt.n = rng_util::below(rng, options.max_vertices + 1);
        gopt.edge_prob = options.edge_prob;
        gopt.weight_low = options.weight_low;
        gopt.weight_high = options.weight_high;
        gopt.integer_weights = options.integer_weights;
        const WeightedDigraph graph = random_digraph(gopt, rng);
        ++report.instances;

        const FeedbackArcResult heuristic = solve_local_ratio(graph);
        const FeedbackArcResult exact = solve_exact(graph, 8);

        std::string problem = verify_feedback_arc_result(graph, heuristic);
        if (problem.empty()) problem = verify_feedback_arc_result(graph, exact);
        if (problem.empty()) {
            const double slack = 1e-9 * std::max(1.0, exact.removed_weight);
            if (heuristic.removed_weight + slack < exact.removed_weight) {
                problem = "heuristic removed less weight than the exact optimum";
            }
        }
        if (problem.empty() && exact.removed_weight == 0.0 &&
            heuristic.removed_weight != 0.0) {
            problem = "heuristic removed weight from an already-acyclic instance";
        }

        if (!problem.empty()) {
            report.passed = false;
            report.failure_message = "instance " + std::to_string(k) + " (seed " +
                                     std::to_string(options.seed) + ", n=" +
                                     std::to_string(gopt.n) + "): " + problem;
            const std::string dump = "oracle-check-failure.edges";
            std::ofstream out(dump);
            if (out) {
                out << "# oracle-check failing instance " << k << ", seed " << options.seed
                    << "\n";
                write_edge_list(out, graph);
                report.failure_dump_path = dump;
            }
            return report;
        }

        if (exact.removed_weight > 0.0) {
            ++report.cyclic_instances;
            report.worst_ratio =
                std::max(report.worst_ratio, heuristic.removed_weight / exact.removed_weight);
        }
    }
    return report;
}

namespace {

constexpr const char* kCsvHeader =
    "dataset,vertices,edges,naive_loss,simple_loss,ratio_loss,ratio_loss_optimized,"
    "removed_weight,solve_rank_seconds,status";

std::vector<std::string> csv_cells(const SuiteRow& row) {
    const BenchRecord& r = row.record;
    if (!row.ok) {
        return {csv_field(r.dataset_name), "", "", "", "", "", "", "", "",
                csv_field("error: " + row.error)};
    }
    return {csv_field(r.dataset_name),
            std::to_string(r.n_vertices),
            std::to_string(r.n_edges),
            format_g17(r.naive),
            format_g17(r.simple),
            format_g17(r.ratio_initial),
            r.ratio_optimized ? format_g17(*r.ratio_optimized) : std::string{},
            format_g17(r.removed_weight),
            format_g17(r.wall_time_seconds),
            "ok"};
}

std::vector<std::string> csv_cells(const AverageRow& avg) {
    return {"Average",
            format_g17(avg.vertices),
            format_g17(avg.edges),
            format_g17(avg.naive),
            format_g17(avg.simple),
            format_g17(avg.ratio_initial),
            avg.ratio_optimized ? format_g17(*avg.ratio_optimized) : std::string{},
            format_g17(avg.removed_weight),
            format_g17(avg.wall_time),
            "average"};
}

std::vector<std::string> table_cells(const SuiteRow& row) {
    const BenchRecord& r = row.record;
    if (!row.ok) {
        return {r.dataset_name, "-", "-", "-", "-", "-", "-", "-", "-", "ERROR: " + row.error};
    }
    return {r.dataset_name,
            std::to_string(r.n_vertices),
            std::to_string(r.n_edges),
            format_f2(r.naive),
            format_f2(r.simple),
            format_f2(r.ratio_initial),
            r.ratio_optimized ? format_f2(*r.ratio_optimized) : std::string{"-"},
            format_f2(r.removed_weight),
            format_f2(r.wall_time_seconds),
            "ok"};
}

std::vector<std::string> table_cells(const AverageRow& avg) {
    return {"Average",
            format_f1(avg.vertices),
            format_f1(avg.edges),
            format_f2(avg.naive),
            format_f2(avg.simple),
            format_f2(avg.ratio_initial),
            avg.ratio_optimized ? format_f2(*avg.ratio_optimized) : std::string{"-"},
            format_f2(avg.removed_weight),
            format_f2(avg.wall_time),
            ""};
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c > 0) out << ',';
        out << cells[c];
    }
    out << '\n';
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<SuiteRow>& rows,
                       bool append_average) {
    out << kCsvHeader << '\n';
    for (const SuiteRow& row : rows) write_csv_row(out, csv_cells(row));
    if (append_average) {
        if (const auto avg = averages_of(rows)) write_csv_row(out, csv_cells(*avg));
    }
}

void write_records_table(std::ostream& out, const std::vector<SuiteRow>& rows,
                         bool append_average) {
    const std::vector<std::string> header = {"Dataset", "V",      "E",       "Naive",
                                             "Simple",  "Ratio",  "RatioOpt", "Removed",
                                             "Time(s)", "Status"};
    std::vector<std::vector<std::string>> body;
    body.reserve(rows.size() + 1);
    for (const SuiteRow& row : rows) body.push_back(table_cells(row));
    if (append_average) {
        if (const auto avg = averages_of(rows)) body.push_back(table_cells(*avg));
    }

    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& cells : body) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            width[c] = std::max(width[c], cells[c].size());
        }
    }

    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) out << "  ";
            if (c == 0 || c + 1 == cells.size()) {
                out << cells[c];
                if (c == 0) out << std::string(width[c] - cells[c].size(), ' ');
            } else {
                out << std::string(width[c] - cells[c].size(), ' ') << cells[c];
            }
        }
        out << '\n';
    };
    emit(header);
    std::size_t total = 0;
    for (const std::size_t w : width) total += w;
    out << std::string(total + 2 * (header.size() - 1), '-') << '\n';
    for (const auto& cells : body) emit(cells);
}

void write_ranking_csv(std::ostream& out, const Ranking& ranking,
                       const WeightedDigraph& graph) {
    out << "label,rank,score\n";
    for (const VertexId v : ranking.order) {
        out << csv_field(graph.label_of(v)) << ',' << ranking.rank[v] << ','
            << format_g17(ranking.scores[v]) << '\n';
    }
}

void write_loss_report_csv(std::ostream& out, const LossReport& report) {
    out << "naive_loss,simple_loss,ratio_loss,weighted_loss,margin_loss,t,epsilon\n"
        << format_g17(report.naive) << ',' << format_g17(report.simple) << ','
        << format_g17(report.ratio) << ',' << format_g17(report.weighted) << ','
        << format_g17(report.margin) << ',' << report.t << ',' << format_g17(report.epsilon)
        << '\n';
}

void write_loss_report_table(std::ostream& out, const LossReport& report) {
    out << "naive loss    " << format_f2(report.naive) << '\n'
        << "simple loss   " << format_f2(report.simple) << '\n'
        << "ratio loss    " << format_f2(report.ratio) << '\n'
        << "weighted loss " << format_f2(report.weighted) << '\n'
        << "margin loss   " << format_f2(report.margin) << '\n'
        << "comparisons t " << report.t << '\n'
        << "epsilon       " << format_g17(report.epsilon) << '\n';
}

void write_oracle_report(std::ostream& out, const OracleCheckReport& report) {
    out << "oracle check: " << report.instances << " instances, " << report.cyclic_instances
        << " with cycles\n";
    if (report.cyclic_instances > 0) {
        out << "worst heuristic/exact removed-weight ratio: " << format_g17(report.worst_ratio)
            << '\n';
    }
    if (report.passed) {
        out << "all invariants held (acyclic residual, edge partition, reinsertion "
               "maximality, exact-optimum dominance)\n";
    } else {
        out << "FAILURE: " << report.failure_message << '\n';
        if (!report.failure_dump_path.empty()) {
            out << "failing instance written to " << report.failure_dump_path << '\n';
        }
    }
}

}  // namespace arcrank
