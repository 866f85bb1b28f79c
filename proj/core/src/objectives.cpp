#include "seqswarm/objectives.hpp"

#include <algorithm>
#include <cassert>

namespace seqswarm {

int cyclomatic_term(const TestSequence& seq, const StateGraph& g) {
    int decisions = 0;
    for (NodeId n : seq.nodes()) {
        if (g.out_degree(n) > 1) ++decisions;
    }
    return decisions + 1;
}

double rand_term(const RandPolicy& policy, int node_position, int total_nodes,
                 RandomSource& rng) {
    assert(node_position >= 1 && node_position <= total_nodes);
    double value;
    if (policy.variant == RandVariant::PaperFormula) {
        value = 1.0 / static_cast<double>(total_nodes - node_position + 1) - 0.1;
    } else {
        value = 1.0 - rng.next_unit();  // (0, 1]
    }
    return std::clamp(value, policy.clamp_floor, 1.0);
}

double path_priority(const TestSequence& seq, const StateGraph& g,
                     const RandPolicy& policy, RandomSource& rng) {
    const double cc = static_cast<double>(cyclomatic_term(seq, g));
    double sum = 0.0;
    for (NodeId n : seq.nodes()) {
        sum += 100.0 / (cc * rand_term(policy, n, g.node_count(), rng));
    }
    return sum / static_cast<double>(seq.length());
}

double oracle_cost(double seq_priority, const PriorityContext& ctx) {
    assert(ctx.graph != nullptr && ctx.suite_size >= 1);
    const double denominator_priority =
        ctx.cost_variant == CostVariant::PerPathPriority ? seq_priority : ctx.max_priority;
    if (!(denominator_priority > 0.0)) throw ZeroPriority();
    return static_cast<double>(ctx.suite_size) /
           (static_cast<double>(ctx.graph->edge_count()) * denominator_priority);
}

ObjectiveVector objective_vector(const TestSequence& seq, const PriorityContext& ctx,
                                 const RandPolicy& policy, RandomSource& rng) {
    const double priority = path_priority(seq, *ctx.graph, policy, rng);
    return {priority, oracle_cost(priority, ctx)};
}

std::vector<ObjectiveVector> evaluate_suite(const PathSuite& suite, const StateGraph& g,
                                            const RandPolicy& policy, CostVariant variant,
                                            RandomSource& rng,
                                            const std::string& algorithm_tag,
                                            const std::string& program_tag) {
    std::vector<double> priorities;
    priorities.reserve(suite.sequences().size());
    for (const TestSequence& seq : suite.sequences()) {
        priorities.push_back(path_priority(seq, g, policy, rng));
    }

    PriorityContext ctx;
    ctx.graph = &g;
    ctx.suite_size = suite.size();
    ctx.max_priority =
        priorities.empty() ? 0.0 : *std::max_element(priorities.begin(), priorities.end());
    ctx.cost_variant = variant;
    ctx.algorithm = algorithm_tag;
    ctx.program = program_tag;

    std::vector<ObjectiveVector> result;
    result.reserve(priorities.size());
    for (double p : priorities) {
        result.push_back({p, oracle_cost(p, ctx)});
    }
    return result;
}

}  // namespace seqswarm
