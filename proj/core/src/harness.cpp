#include "seqswarm/harness.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "seqswarm/log.hpp"
#include "seqswarm/pareto.hpp"

namespace seqswarm {

namespace {

void verify_flags(const std::vector<ObjectiveVector>& vectors, const std::vector<bool>& flags) {
    const auto expected = non_dominated_indices(vectors);
    std::vector<bool> reference(vectors.size(), false);
    for (std::size_t i : expected) reference[i] = true;
    if (reference != flags) {
        throw std::logic_error("non-dominated flags disagree with the dominance filter");
    }
}

bool single_objective(Algorithm a) {
    return a == Algorithm::Pso || a == Algorithm::Fa;
}

std::string agents_label(Algorithm a) {
    return (a == Algorithm::Pso || a == Algorithm::Mopso) ? "P" : "FF";
}

// The short-form first column of the priority tables: the segment of the
// path spanning the transitions not covered by earlier rows.
std::string novel_segment(const TestSequence& seq, std::set<Edge>& covered) {
    const auto edges = seq.edges();
    std::size_t first = edges.size(), last = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!covered.count(edges[i])) {
            first = std::min(first, i);
            last = i;
        }
    }
    for (const Edge& e : edges) covered.insert(e);
    if (first == edges.size()) return seq.to_string();  // nothing novel left
    std::string out;
    for (std::size_t i = first; i <= last + 1; ++i) {
        if (i > first) out += ',';
        out += std::to_string(seq.nodes()[i]);
    }
    return out;
}

SizeGroup build_group(Algorithm algorithm, int size, const StateGraph& g,
                      const ExperimentSpec& spec) {
    SizeGroup group;
    group.algorithm = algorithm;
    group.swarm_size = size;

    for (std::uint64_t seed : spec.seeds) {
        SwarmConfig cfg;
        cfg.algorithm = algorithm;
        cfg.agents = size;
        cfg.max_iterations = spec.max_iterations;
        cfg.seed = seed;
        cfg.rand_policy = spec.rand_policy;
        cfg.cost_variant = spec.cost_variant;
        RunResult run = run_optimizer(g, cfg);
        log_info(algorithm_name(algorithm) + " agents=" + std::to_string(size) +
                 " seed=" + std::to_string(seed) + " suite=" + std::to_string(run.suite.size()) +
                 " coverage_iter=" + std::to_string(run.iterations_to_coverage));
        group.all_converged = group.all_converged && run.coverage_reached;
        group.wall_time_seconds += run.wall_time_seconds;
        group.runs.push_back(std::move(run));
    }

    // Seed-averaged objectives per sequence, keyed in lexicographic order.
    std::map<TestSequence, std::pair<ObjectiveVector, int>> accumulated;
    for (const RunResult& run : group.runs) {
        for (std::size_t i = 0; i < run.objectives.size(); ++i) {
            auto& slot = accumulated[run.suite.sequences()[i]];
            slot.first.priority += run.objectives[i].priority;
            slot.first.cost += run.objectives[i].cost;
            slot.second += 1;
        }
    }
    std::vector<ObjectiveVector> means;
    for (const auto& [sequence, slot] : accumulated) {
        SequenceRow row;
        row.sequence = sequence;
        row.mean_objectives = {slot.first.priority / slot.second, slot.first.cost / slot.second};
        row.runs_present = slot.second;
        group.rows.push_back(row);
        means.push_back(row.mean_objectives);
    }

    std::vector<bool> flags(means.size(), false);
    for (std::size_t i : non_dominated_indices(means)) flags[i] = true;
    verify_flags(means, flags);
    for (std::size_t i = 0; i < flags.size(); ++i) group.rows[i].non_dominated = flags[i];

    double priority_sum = 0.0, cost_sum = 0.0;
    int counted = 0;
    for (const SequenceRow& row : group.rows) {
        // single-objective tables average every row; the others only the
        // non-dominated ones
        if (single_objective(algorithm) || row.non_dominated) {
            priority_sum += row.mean_objectives.priority;
            cost_sum += row.mean_objectives.cost;
            ++counted;
        }
    }
    if (counted > 0) {
        group.avg_priority = priority_sum / counted;
        group.avg_cost = cost_sum / counted;
    }
    return group;
}

Table build_priority_table(Algorithm algorithm, const std::vector<const SizeGroup*>& groups) {
    Table table;
    table.title = (algorithm == Algorithm::Pso ? "PSO" : "FA");
    table.title += " path priority by swarm size";
    table.columns = {"Optimal Test Sequences Generated", "Independent paths generated"};
    for (const SizeGroup* g : groups) {
        table.columns.push_back(agents_label(algorithm) + " = " +
                                std::to_string(g->swarm_size));
    }

    std::vector<TestSequence> all_sequences;
    for (const SizeGroup* g : groups) {
        for (const SequenceRow& row : g->rows) {
            if (std::find(all_sequences.begin(), all_sequences.end(), row.sequence) ==
                all_sequences.end()) {
                all_sequences.push_back(row.sequence);
            }
        }
    }
    std::sort(all_sequences.begin(), all_sequences.end());

    std::set<Edge> covered;
    std::vector<double> column_sum(groups.size(), 0.0);
    std::vector<int> column_count(groups.size(), 0);
    for (const TestSequence& seq : all_sequences) {
        std::vector<std::string> cells = {novel_segment(seq, covered), seq.to_string()};
        for (std::size_t c = 0; c < groups.size(); ++c) {
            const auto& rows = groups[c]->rows;
            auto it = std::find_if(rows.begin(), rows.end(),
                                   [&](const SequenceRow& r) { return r.sequence == seq; });
            if (it == rows.end()) {
                cells.push_back("-");
            } else {
                cells.push_back(fmt4(it->mean_objectives.priority));
                column_sum[c] += it->mean_objectives.priority;
                column_count[c] += 1;
            }
        }
        table.rows.push_back(std::move(cells));
    }

    std::vector<std::string> average = {"Average Value", ""};
    for (std::size_t c = 0; c < groups.size(); ++c) {
        average.push_back(column_count[c] ? fmt4(column_sum[c] / column_count[c]) : "-");
    }
    table.rows.push_back(std::move(average));
    return table;
}

Table build_objectives_table(const SizeGroup& group) {
    Table table;
    table.title = algorithm_name(group.algorithm);
    std::transform(table.title.begin(), table.title.end(), table.title.begin(), ::toupper);
    table.title += " objective values with " +
                   std::string(group.algorithm == Algorithm::Mopso ? "Particles" : "Fireflies") +
                   " = " + std::to_string(group.swarm_size);
    table.columns = {"Optimal Test Sequences Generated", "Independent paths generated",
                     "Path Priority", "Cost"};

    std::vector<ObjectiveVector> vectors;
    std::vector<bool> flags;
    std::set<Edge> covered;
    for (const SequenceRow& row : group.rows) {
        table.rows.push_back({novel_segment(row.sequence, covered), row.sequence.to_string(),
                              fmt4(row.mean_objectives.priority),
                              fmt4(row.mean_objectives.cost)});
        vectors.push_back(row.mean_objectives);
        flags.push_back(row.non_dominated);
    }
    verify_flags(vectors, flags);
    table.flags = flags;
    table.flags.push_back(false);  // average row carries no flag
    table.rows.push_back(
        {"Average Values", "", fmt4(group.avg_priority), fmt4(group.avg_cost)});
    return table;
}

Table build_comparison_table(const SizeGroup& mopso_a, const SizeGroup& mofa_a,
                             const SizeGroup& mopso_b, const SizeGroup& mofa_b) {
    Table table;
    table.title = "MOPSO vs MOFA, sizes " + std::to_string(mopso_a.swarm_size) + " and " +
                  std::to_string(mopso_b.swarm_size);
    const SizeGroup* column_groups[4] = {&mopso_a, &mofa_a, &mopso_b, &mofa_b};
    for (const SizeGroup* g : column_groups) {
        const std::string head = (g->algorithm == Algorithm::Mopso ? "MOPSO Particles=" :
                                                                     "MOFA Fireflies=") +
                                 std::to_string(g->swarm_size);
        table.columns.push_back(head + " Path Priority");
        table.columns.push_back(head + " Cost");
    }

    std::size_t max_rows = 0;
    for (const SizeGroup* g : column_groups) max_rows = std::max(max_rows, g->rows.size());

    for (std::size_t r = 0; r < max_rows; ++r) {
        std::vector<std::string> cells;
        for (const SizeGroup* g : column_groups) {
            if (r < g->rows.size()) {
                const SequenceRow& row = g->rows[r];
                const std::string p = fmt4(row.mean_objectives.priority);
                const std::string c = fmt4(row.mean_objectives.cost);
                // bold markers inline; flags here are per column group, not per row
                cells.push_back(row.non_dominated ? "**" + p + "**" : p);
                cells.push_back(row.non_dominated ? "**" + c + "**" : c);
            } else {
                cells.push_back("-");
                cells.push_back("-");
            }
        }
        table.rows.push_back(std::move(cells));
    }

    std::vector<std::string> average;
    for (const SizeGroup* g : column_groups) {
        average.push_back(fmt4(g->avg_priority));
        average.push_back(fmt4(g->avg_cost));
    }
    table.rows.push_back(std::move(average));
    return table;
}

Table build_timing_table(const ComparisonReport& report) {
    Table table;
    table.title = "wall_time by algorithm and swarm size";
    table.columns = {"algorithm", "agents", "wall_time_seconds"};
    for (const SizeGroup& group : report.groups) {
        table.rows.push_back({algorithm_name(group.algorithm),
                              std::to_string(group.swarm_size),
                              fmt4(group.wall_time_seconds)});
    }
    std::map<Algorithm, double> totals;
    for (const SizeGroup& group : report.groups) {
        totals[group.algorithm] += group.wall_time_seconds;
    }
    for (const auto& [algorithm, total] : totals) {
        table.rows.push_back({algorithm_name(algorithm), "all", fmt4(total)});
    }
    return table;
}

std::string build_winner_summary(const ComparisonReport& report) {
    std::ostringstream out;
    for (const SizeGroup& group : report.groups) {
        if (group.algorithm != Algorithm::Mopso) continue;
        const SizeGroup* other = report.find(Algorithm::Mofa, group.swarm_size);
        if (!other) continue;
        auto best = [](const SizeGroup& g) {
            double best_priority = 0.0, best_cost = std::numeric_limits<double>::infinity();
            for (const SequenceRow& row : g.rows) {
                if (!row.non_dominated) continue;
                best_priority = std::max(best_priority, row.mean_objectives.priority);
                best_cost = std::min(best_cost, row.mean_objectives.cost);
            }
            return std::pair{best_priority, best_cost};
        };
        auto [mopso_p, mopso_c] = best(group);
        auto [mofa_p, mofa_c] = best(*other);
        out << "size " << group.swarm_size << ": best non-dominated priority "
            << (mopso_p >= mofa_p ? "MOPSO" : "MOFA") << " (" << fmt4(mopso_p) << " vs "
            << fmt4(mofa_p) << "), lowest non-dominated cost "
            << (mopso_c <= mofa_c ? "MOPSO" : "MOFA") << " (" << fmt4(mopso_c) << " vs "
            << fmt4(mofa_c) << ")\n";
    }
    return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << bytes;
}

}  // namespace

const SizeGroup* ComparisonReport::find(Algorithm a, int size) const {
    for (const SizeGroup& group : groups) {
        if (group.algorithm == a && group.swarm_size == size) return &group;
    }
    return nullptr;
}

double ComparisonReport::wall_time_total(Algorithm a) const {
    double total = 0.0;
    for (const SizeGroup& group : groups) {
        if (group.algorithm == a) total += group.wall_time_seconds;
    }
    return total;
}

StateGraph load_graph(const std::string& source) {
    if (source == "atm") return atm_fixture();
    std::ifstream in(source, std::ios::binary);
    if (!in) {
        throw GraphError(GraphErrorKind::MalformedDocument, "cannot open graph file " + source);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

ComparisonReport replicate_paper(const ExperimentSpec& spec) {
    if (spec.algorithms.empty() || spec.swarm_sizes.empty() || spec.seeds.empty()) {
        throw std::invalid_argument("algorithms, swarm sizes and seeds must be nonempty");
    }
    const StateGraph g = load_graph(spec.graph_source);

    ComparisonReport report;
    for (Algorithm algorithm : spec.algorithms) {
        for (int size : spec.swarm_sizes) {
            report.groups.push_back(build_group(algorithm, size, g, spec));
            report.all_converged =
                report.all_converged && report.groups.back().all_converged;
        }
    }
    report.winner_summary = build_winner_summary(report);

    if (!spec.out_dir.empty()) {
        std::filesystem::create_directories(spec.out_dir);
        const std::string ext = "." + format_extension(spec.format);

        for (Algorithm algorithm : spec.algorithms) {
            if (single_objective(algorithm)) {
                std::vector<const SizeGroup*> groups;
                for (int size : spec.swarm_sizes) groups.push_back(report.find(algorithm, size));
                write_file(spec.out_dir / (algorithm_name(algorithm) + "_path_priority" + ext),
                           render_table(build_priority_table(algorithm, groups), spec.format));
            } else {
                for (int size : spec.swarm_sizes) {
                    const SizeGroup* group = report.find(algorithm, size);
                    write_file(spec.out_dir / (algorithm_name(algorithm) + "_objectives_agents_" +
                                               std::to_string(size) + ext),
                               render_table(build_objectives_table(*group), spec.format));
                }
            }
        }

        const bool has_pair = report.find(Algorithm::Mopso, spec.swarm_sizes.front()) &&
                              report.find(Algorithm::Mofa, spec.swarm_sizes.front());
        if (has_pair) {
            for (std::size_t i = 0; i + 1 < spec.swarm_sizes.size(); i += 2) {
                const int a = spec.swarm_sizes[i];
                const int b = spec.swarm_sizes[i + 1];
                write_file(spec.out_dir / ("comparison_agents_" + std::to_string(a) + "_" +
                                           std::to_string(b) + ext),
                           render_table(build_comparison_table(
                                            *report.find(Algorithm::Mopso, a),
                                            *report.find(Algorithm::Mofa, a),
                                            *report.find(Algorithm::Mopso, b),
                                            *report.find(Algorithm::Mofa, b)),
                                        spec.format));
            }
        }

        write_file(spec.out_dir / ("timing" + ext),
                   render_table(build_timing_table(report), spec.format));
        write_file(spec.out_dir / "summary.txt", report.winner_summary);
    }
    return report;
}

namespace {

struct CliOptions {
    std::string graph = "atm";
    std::string algo;
    int agents = 10;
    int iterations = 200;
    std::uint64_t seed = 11;
    std::string seeds;
    std::string rand_policy = "paper";
    std::string cost_variant = "max";
    std::string format;
    std::string out_dir;
};

RandPolicy make_rand_policy(const std::string& name) {
    RandPolicy policy;
    if (name == "paper") policy.variant = RandVariant::PaperFormula;
    else if (name == "uniform") policy.variant = RandVariant::SeededUniform;
    else throw CLI::ValidationError("--rand-policy", "expected paper or uniform");
    return policy;
}

CostVariant make_cost_variant(const std::string& name) {
    if (name == "max") return CostVariant::MaxPriority;
    if (name == "perpath") return CostVariant::PerPathPriority;
    throw CLI::ValidationError("--cost-variant", "expected max or perpath");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        seeds.push_back(std::stoull(item));
    }
    if (seeds.empty()) throw CLI::ValidationError("--seeds", "expected a,b,c");
    return seeds;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    set_log_level_from_env();

    CLI::App app{"Swarm-guided test sequence generation from state-transition diagrams"};
    app.require_subcommand(1);
    CliOptions opt;

    auto add_graph = [&](CLI::App* cmd) {
        cmd->add_option("--graph", opt.graph, "graph file path or 'atm' builtin");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "run one optimizer and report the result");
    add_graph(run_cmd);
    run_cmd->add_option("--algo", opt.algo, "pso|mopso|fa|mofa")->required();
    run_cmd->add_option("--agents", opt.agents, "swarm size");
    run_cmd->add_option("--iterations", opt.iterations, "iteration budget");
    run_cmd->add_option("--seed", opt.seed, "rng seed");
    run_cmd->add_option("--rand-policy", opt.rand_policy, "paper|uniform");
    run_cmd->add_option("--cost-variant", opt.cost_variant, "max|perpath");
    run_cmd->add_option("--format", opt.format, "csv|md|json (default json)");
    run_cmd->add_option("--out", opt.out_dir, "output directory (default stdout)");

    CLI::App* replicate_cmd =
        app.add_subcommand("replicate", "full sweep and paper-shaped report tables");
    add_graph(replicate_cmd);
    replicate_cmd->add_option("--algo", opt.algo, "restrict to one algorithm");
    replicate_cmd->add_option("--agents", opt.agents, "restrict to one swarm size")
        ->default_val(0);
    replicate_cmd->add_option("--iterations", opt.iterations, "iteration budget");
    replicate_cmd->add_option("--seeds", opt.seeds, "comma-separated seed list");
    replicate_cmd->add_option("--rand-policy", opt.rand_policy, "paper|uniform");
    replicate_cmd->add_option("--cost-variant", opt.cost_variant, "max|perpath");
    replicate_cmd->add_option("--format", opt.format, "csv|md|json (default md)");
    replicate_cmd->add_option("--out", opt.out_dir, "output directory");

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "print the exhaustive start-to-exit sequence list");
    add_graph(oracle_cmd);

    CLI::App* validate_cmd = app.add_subcommand("validate", "parse and validate a graph");
    add_graph(validate_cmd);

    std::vector<const char*> argv;
    argv.push_back("seqswarm");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return 1;
    }

    try {
        if (run_cmd->parsed()) {
            if (opt.agents < 1) {
                err << "error: --agents must be positive\nrun with --help for usage\n";
                return 1;
            }
            if (opt.iterations < 1) {
                err << "error: --iterations must be positive\nrun with --help for usage\n";
                return 1;
            }
            const TableFormat format =
                parse_format(opt.format.empty() ? "json" : opt.format);
            const StateGraph g = load_graph(opt.graph);
            SwarmConfig cfg;
            cfg.algorithm = algorithm_from_name(opt.algo);
            cfg.agents = opt.agents;
            cfg.max_iterations = opt.iterations;
            cfg.seed = opt.seed;
            cfg.rand_policy = make_rand_policy(opt.rand_policy);
            cfg.cost_variant = make_cost_variant(opt.cost_variant);
            const RunResult result = run_optimizer(g, cfg);
            const std::string rendered = emit_run(result, format);
            if (opt.out_dir.empty()) {
                out << rendered;
            } else {
                std::filesystem::create_directories(opt.out_dir);
                const auto path = std::filesystem::path(opt.out_dir) /
                                  ("run_" + opt.algo + "_agents" + std::to_string(opt.agents) +
                                   "_seed" + std::to_string(opt.seed) + "." +
                                   format_extension(format));
                write_file(path, rendered);
                out << "wrote " << path.string() << '\n';
            }
            return result.coverage_reached ? 0 : 2;
        }

        if (replicate_cmd->parsed()) {
            ExperimentSpec spec;
            spec.graph_source = opt.graph;
            if (!opt.algo.empty()) spec.algorithms = {algorithm_from_name(opt.algo)};
            if (opt.agents > 0 && replicate_cmd->count("--agents")) {
                spec.swarm_sizes = {opt.agents};
            }
            if (replicate_cmd->count("--agents") && opt.agents < 1) {
                err << "error: --agents must be positive\nrun with --help for usage\n";
                return 1;
            }
            if (opt.iterations < 1) {
                err << "error: --iterations must be positive\nrun with --help for usage\n";
                return 1;
            }
            spec.max_iterations = opt.iterations;
            if (!opt.seeds.empty()) spec.seeds = parse_seed_list(opt.seeds);
            spec.rand_policy = make_rand_policy(opt.rand_policy);
            spec.cost_variant = make_cost_variant(opt.cost_variant);
            spec.format = parse_format(opt.format.empty() ? "md" : opt.format);
            spec.out_dir = opt.out_dir.empty() ? "seqswarm_out" : opt.out_dir;
            const ComparisonReport report = replicate_paper(spec);
            out << report.winner_summary;
            out << "reports written to " << spec.out_dir.string() << '\n';
            return report.all_converged ? 0 : 2;
        }

        if (oracle_cmd->parsed()) {
            const StateGraph g = load_graph(opt.graph);
            const PathSuite suite = enumerate_all_sequences(g);
            for (const TestSequence& seq : suite.sequences()) {
                out << seq.to_string() << '\n';
            }
            return 0;
        }

        if (validate_cmd->parsed()) {
            const StateGraph g = load_graph(opt.graph);
            out << "nodes=" << g.node_count() << " edges=" << g.edge_count()
                << " predicate_nodes=" << predicate_nodes(g).size() << " start=" << g.start()
                << " exits=";
            for (std::size_t i = 0; i < g.exits().size(); ++i) {
                if (i) out << ',';
                out << g.exits()[i];
            }
            out << '\n';
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return 1;
    } catch (const GraphError& e) {
        err << "graph error: " << e.what() << '\n';
        return 1;
    } catch (const UnsupportedFormat& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace seqswarm
