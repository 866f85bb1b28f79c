#ifndef SEQSWARM_OBJECTIVES_HPP
#define SEQSWARM_OBJECTIVES_HPP

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqswarm/path_enum.hpp"
#include "seqswarm/random.hpp"
#include "seqswarm/state_graph.hpp"

namespace seqswarm {

/// The two fitness values of a sequence within a suite. priority (F1,
/// maximize) is the mean per-node brightness; cost (F2, minimize) is the
/// oracle cost of verifying behavior through the suite. Both finite and > 0.
struct ObjectiveVector {
    double priority = 0.0;
    double cost = 0.0;
    auto operator<=>(const ObjectiveVector&) const = default;
};

enum class RandVariant {
    PaperFormula,   // deterministic 1/(N - i + 1) - 0.1, clamped
    SeededUniform,  // uniform draw in (0,1], clamped
};

struct RandPolicy {
    RandVariant variant = RandVariant::PaperFormula;
    double clamp_floor = 0.01;
};

enum class CostVariant {
    MaxPriority,      // tc / (Bp * max suite priority); identical across the suite
    PerPathPriority,  // tc / (Bp * own priority); spreads cost per path
};

/// Suite-level inputs of the cost formula: tc (suite size), Bp (edge count
/// via graph), the best suite priority, and the algorithm/program tags.
struct PriorityContext {
    const StateGraph* graph = nullptr;
    int suite_size = 0;         // tc
    double max_priority = 0.0;  // max F1 over the suite
    CostVariant cost_variant = CostVariant::MaxPriority;
    std::string algorithm;      // A in MaxPriority(P, A)
    std::string program;        // P
};

class ZeroPriority : public std::runtime_error {
public:
    ZeroPriority() : std::runtime_error("suite max priority is not positive") {}
};

/// Per-path complexity count: predicate nodes of g occurring on seq, plus 1.
int cyclomatic_term(const TestSequence& seq, const StateGraph& g);

/// The rand() factor of the brightness formula for the node at id
/// node_position (1..N). PaperFormula is deterministic:
/// clamp(1/(N - position + 1) - 0.1, floor, 1). SeededUniform draws from rng.
double rand_term(const RandPolicy& policy, int node_position, int total_nodes,
                 RandomSource& rng);

/// F1: mean over the sequence's nodes v of 100 / (CC * rand(v)). Positive.
double path_priority(const TestSequence& seq, const StateGraph& g,
                     const RandPolicy& policy, RandomSource& rng);

/// F2: tc / (Bp * MaxPriority) under MaxPriority, tc / (Bp * seq_priority)
/// under PerPathPriority. Throws ZeroPriority if the denominator priority
/// is not positive (cannot happen for valid suites).
double oracle_cost(double seq_priority, const PriorityContext& ctx);

/// Composes path_priority and oracle_cost.
ObjectiveVector objective_vector(const TestSequence& seq, const PriorityContext& ctx,
                                 const RandPolicy& policy, RandomSource& rng);

/// Evaluates every suite member: all priorities first, then costs against the
/// resulting max priority, so the MaxPriority variant is suite-constant.
std::vector<ObjectiveVector> evaluate_suite(const PathSuite& suite, const StateGraph& g,
                                            const RandPolicy& policy, CostVariant variant,
                                            RandomSource& rng,
                                            const std::string& algorithm_tag = "",
                                            const std::string& program_tag = "");

}  // namespace seqswarm

#endif
