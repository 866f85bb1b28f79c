#ifndef SEQSWARM_OPTIMIZERS_HPP
#define SEQSWARM_OPTIMIZERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "seqswarm/objectives.hpp"
#include "seqswarm/pareto.hpp"
#include "seqswarm/path_enum.hpp"
#include "seqswarm/state_graph.hpp"

namespace seqswarm {

enum class Algorithm { Pso, Mopso, Fa, Mofa };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);  // throws std::invalid_argument

struct PsoParams {
    double inertia = 0.7;    // w
    double cognitive = 1.5;  // c1
    double social = 1.5;     // c2
};

struct FaParams {
    double base_attraction = 1.0;      // beta0
    double absorption = 1.0;           // gamma
    double randomization = 0.2;        // alpha
    double randomization_decay = 0.97; // per iteration
};

struct SwarmConfig {
    Algorithm algorithm = Algorithm::Mopso;
    int agents = 10;
    int max_iterations = 200;
    std::uint64_t seed = 0;
    RandPolicy rand_policy{};
    CostVariant cost_variant = CostVariant::MaxPriority;
    PsoParams pso{};
    FaParams fa{};
    int stagnation_window = 20;  // extra stable iterations after full coverage
    int walk_retry_budget = 50;
    // While coverage is incomplete, this many iterations without a suite
    // acceptance re-initialize every agent's bias and velocity. Saturated
    // pulls toward one leader can floor the bias on covered transit edges,
    // which starves the guidance walk; the reset restores it.
    int exploration_reset_window = 3;
};

/// Bias weights are clamped to this range after every update.
inline constexpr double kBiasFloor = 0.01;
inline constexpr double kBiasCeiling = 100.0;

/// One swarm member. current is its latest sequence (the discrete
/// "position"); edge_bias is the continuous surrogate the velocity rule
/// acts on, multiplied into the guidance weights when the agent walks.
struct AgentState {
    TestSequence current;
    TestSequence best_sequence;
    double best_fitness = 0.0;
    ObjectiveVector best_objectives{};
    bool has_best = false;
    std::vector<double> edge_bias;  // indexed like StateGraph::edges()
    std::vector<double> velocity;
};

/// Full record of one optimizer run.
struct RunResult {
    Algorithm algorithm = Algorithm::Mopso;
    int agents = 0;
    std::uint64_t seed = 0;
    PathSuite suite;
    std::vector<ObjectiveVector> objectives;  // final evaluation, one per suite member
    std::vector<ArchiveEntry> archive;        // empty for single-objective runs
    std::vector<double> trace;                // best fitness per executed iteration
    int iterations_executed = 0;
    int iterations_to_coverage = 0;           // 0 when coverage was never reached
    bool coverage_reached = false;
    int distinct_sequences_evaluated = 0;     // distinct agent positions seen
    double wall_time_seconds = 0.0;
    std::vector<AgentState> final_agents;     // end-of-run swarm state; not serialized
};

RunResult run_pso(const StateGraph& g, const SwarmConfig& cfg);
RunResult run_mopso(const StateGraph& g, const SwarmConfig& cfg);
RunResult run_fa(const StateGraph& g, const SwarmConfig& cfg);
RunResult run_mofa(const StateGraph& g, const SwarmConfig& cfg);

/// Dispatches on cfg.algorithm.
RunResult run_optimizer(const StateGraph& g, const SwarmConfig& cfg);

/// 0/1 vector over the graph's canonical edge order marking the sequence's
/// transitions.
std::vector<double> edge_indicator(const TestSequence& seq, const StateGraph& g);

/// Hamming distance between two sequences' edge-indicator vectors.
int indicator_distance(const TestSequence& a, const TestSequence& b, const StateGraph& g);

/// Firefly attraction beta0 * exp(-gamma * r^2).
double attraction_strength(double beta0, double gamma, double distance);

/// Scalarized brightness for MOFA attraction ordering:
/// lambda * norm(F1) - (1 - lambda) * norm(F2), with min-max normalization
/// over the given population (degenerate ranges normalize to 0.5).
std::vector<double> scalarized_scores(const std::vector<ObjectiveVector>& population,
                                      double lambda);

}  // namespace seqswarm

#endif
