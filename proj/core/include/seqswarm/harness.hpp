#ifndef SEQSWARM_HARNESS_HPP
#define SEQSWARM_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "seqswarm/optimizers.hpp"
#include "seqswarm/report.hpp"

namespace seqswarm {

/// Sweep description. Defaults reproduce the reference experiment protocol:
/// four algorithms, swarm sizes {3,5,7,10,15,20}, five runs per size.
struct ExperimentSpec {
    std::string graph_source = "atm";  // "atm" builtin or a file path
    std::vector<Algorithm> algorithms = {Algorithm::Pso, Algorithm::Mopso,
                                         Algorithm::Fa, Algorithm::Mofa};
    std::vector<int> swarm_sizes = {3, 5, 7, 10, 15, 20};
    std::vector<std::uint64_t> seeds = {11, 23, 37, 53, 71};
    int max_iterations = 200;
    RandPolicy rand_policy{};
    CostVariant cost_variant = CostVariant::MaxPriority;
    TableFormat format = TableFormat::Md;
    std::filesystem::path out_dir;  // no files are written when empty
};

/// One sequence row of a (algorithm, swarm size) report cell: objectives are
/// averaged over the seed runs whose final suite contains the sequence.
struct SequenceRow {
    TestSequence sequence;
    ObjectiveVector mean_objectives{};
    int runs_present = 0;
    bool non_dominated = false;
};

struct SizeGroup {
    Algorithm algorithm = Algorithm::Pso;
    int swarm_size = 0;
    std::vector<SequenceRow> rows;  // lexicographic by node sequence
    double avg_priority = 0.0;      // over flagged rows (all rows when single-objective)
    double avg_cost = 0.0;
    double wall_time_seconds = 0.0; // summed over the seed runs
    bool all_converged = true;
    std::vector<RunResult> runs;
};

struct ComparisonReport {
    std::vector<SizeGroup> groups;  // algorithm-major, size-minor
    std::string winner_summary;     // per-objective winners, excluding timing
    bool all_converged = true;

    const SizeGroup* find(Algorithm a, int size) const;
    double wall_time_total(Algorithm a) const;
};

/// Executes the full sweep (algorithms x sizes x seeds) and assembles the
/// table groups. Writes report files into spec.out_dir when it is nonempty:
/// priority tables for PSO/FA, per-size objective tables for MOPSO/MOFA,
/// side-by-side comparison tables for size pairs (3,5), (7,10), (15,20),
/// plus timing and summary files. Deterministic except wall_time fields.
ComparisonReport replicate_paper(const ExperimentSpec& spec);

/// Loads "atm" builtin or parses the file at the given path.
StateGraph load_graph(const std::string& source);

/// CLI entry point: subcommands run, replicate, oracle, validate.
/// Returns 0 on success, 1 on configuration/validation errors, 2 when any
/// run failed to reach full coverage (reports are still written).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqswarm

#endif
