#include "seqswarm/optimizers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

namespace seqswarm {

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Pso: return "pso";
        case Algorithm::Mopso: return "mopso";
        case Algorithm::Fa: return "fa";
        case Algorithm::Mofa: return "mofa";
    }
    return "unknown";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "pso") return Algorithm::Pso;
    if (name == "mopso") return Algorithm::Mopso;
    if (name == "fa") return Algorithm::Fa;
    if (name == "mofa") return Algorithm::Mofa;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::vector<double> edge_indicator(const TestSequence& seq, const StateGraph& g) {
    std::vector<double> indicator(static_cast<std::size_t>(g.edge_count()), 0.0);
    for (const Edge& e : seq.edges()) {
        int k = g.edge_index(e.from, e.to);
        if (k >= 0) indicator[static_cast<std::size_t>(k)] = 1.0;
    }
    return indicator;
}

int indicator_distance(const TestSequence& a, const TestSequence& b, const StateGraph& g) {
    const auto ia = edge_indicator(a, g);
    const auto ib = edge_indicator(b, g);
    int distance = 0;
    for (std::size_t k = 0; k < ia.size(); ++k) distance += ia[k] != ib[k];
    return distance;
}

double attraction_strength(double beta0, double gamma, double distance) {
    return beta0 * std::exp(-gamma * distance * distance);
}

std::vector<double> scalarized_scores(const std::vector<ObjectiveVector>& population,
                                      double lambda) {
    const std::size_t n = population.size();
    std::vector<double> scores(n, 0.0);
    if (n == 0) return scores;

    auto min_max = [&](auto key) {
        double lo = key(population[0]), hi = key(population[0]);
        for (const auto& v : population) {
            lo = std::min(lo, key(v));
            hi = std::max(hi, key(v));
        }
        return std::pair{lo, hi};
    };
    auto [p_lo, p_hi] = min_max([](const ObjectiveVector& v) { return v.priority; });
    auto [c_lo, c_hi] = min_max([](const ObjectiveVector& v) { return v.cost; });

    auto normalize = [](double x, double lo, double hi) {
        return hi - lo > 0.0 ? (x - lo) / (hi - lo) : 0.5;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double f1 = normalize(population[i].priority, p_lo, p_hi);
        const double f2 = normalize(population[i].cost, c_lo, c_hi);
        scores[i] = lambda * f1 - (1.0 - lambda) * f2;
    }
    return scores;
}

namespace {

bool is_multi_objective(Algorithm a) {
    return a == Algorithm::Mopso || a == Algorithm::Mofa;
}

bool is_firefly(Algorithm a) {
    return a == Algorithm::Fa || a == Algorithm::Mofa;
}

double clamp_bias(double v) {
    return std::clamp(v, kBiasFloor, kBiasCeiling);
}

// Sortable snapshot of the archive contents for stagnation detection.
std::vector<std::tuple<std::string, double, double>> archive_snapshot(const ParetoArchive& ar) {
    std::vector<std::tuple<std::string, double, double>> snap;
    snap.reserve(ar.size());
    for (const ArchiveEntry& e : ar.entries()) {
        snap.emplace_back(e.sequence.to_string(), e.objectives.priority, e.objectives.cost);
    }
    std::sort(snap.begin(), snap.end());
    return snap;
}

}  // namespace

RunResult run_optimizer(const StateGraph& g, const SwarmConfig& cfg) {
    if (cfg.agents < 1) throw std::invalid_argument("agents must be positive");
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");

    const bool multi = is_multi_objective(cfg.algorithm);
    const bool firefly = is_firefly(cfg.algorithm);
    const std::size_t edge_count = static_cast<std::size_t>(g.edge_count());

    Mt19937Source rng(cfg.seed);
    GuidanceMatrix guidance = init_guidance(g);
    PathSuite suite;
    ParetoArchive archive;

    std::vector<AgentState> agents(static_cast<std::size_t>(cfg.agents));
    for (AgentState& a : agents) {
        a.edge_bias.assign(edge_count, 1.0);
        a.velocity.assign(edge_count, 0.0);
    }

    RunResult result;
    result.algorithm = cfg.algorithm;
    result.agents = cfg.agents;
    result.seed = cfg.seed;

    double gbest_fitness = -std::numeric_limits<double>::infinity();
    TestSequence gbest_sequence;
    double fa_alpha = cfg.fa.randomization;
    int stagnation = 0;
    int idle_iterations = 0;
    double prev_gbest = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::tuple<std::string, double, double>> prev_archive;
    std::vector<ObjectiveVector> suite_vectors;
    std::set<TestSequence> seen_sequences;

    const auto started = std::chrono::steady_clock::now();

    for (int iteration = 1; iteration <= cfg.max_iterations; ++iteration) {
        // Walk phase. Walks see the iteration-start coverage snapshot.
        for (AgentState& agent : agents) {
            GuidanceMatrix effective = guidance;
            for (std::size_t k = 0; k < edge_count; ++k) {
                const Edge& e = g.edges()[k];
                effective.set(e.from, e.to, guidance.at(e.from, e.to) * agent.edge_bias[k]);
            }
            agent.current = walk_retrying(g, effective, suite.covered_edges(), rng,
                                          cfg.walk_retry_budget);
            seen_sequences.insert(agent.current);
        }

        // Acceptance phase: feed this iteration's candidates through the
        // suite rule fattest-first (most still-novel transitions, walk order
        // on ties) so thin fragments of a fatter candidate get rejected.
        bool accepted_any = false;
        std::vector<char> pending(agents.size(), 1);
        for (;;) {
            std::size_t best = agents.size();
            std::size_t best_novel = 0;
            for (std::size_t i = 0; i < agents.size(); ++i) {
                if (!pending[i]) continue;
                std::size_t novel = 0;
                for (const Edge& e : agents[i].current.edges()) {
                    novel += suite.covered_edges().count(e) == 0;
                }
                if (novel > best_novel) {
                    best_novel = novel;
                    best = i;
                }
            }
            if (best == agents.size()) break;
            pending[best] = 0;
            if (accept_into_suite(suite, agents[best].current)) {
                decay_guidance(guidance, agents[best].current);
                accepted_any = true;
            }
        }
        if (!result.coverage_reached && coverage_complete(suite, g)) {
            result.coverage_reached = true;
            result.iterations_to_coverage = iteration;
        }
        if (!result.coverage_reached) {
            idle_iterations = accepted_any ? 0 : idle_iterations + 1;
            if (idle_iterations >= cfg.exploration_reset_window) {
                // Swarm saturation stalled the guidance walk; fresh bias and
                // velocity put the walk back in its coverage-seeking regime.
                for (AgentState& agent : agents) {
                    std::fill(agent.edge_bias.begin(), agent.edge_bias.end(), 1.0);
                    std::fill(agent.velocity.begin(), agent.velocity.end(), 0.0);
                }
                idle_iterations = 0;
            }
        }

        // Evaluation phase: the whole accepted suite under the current
        // context (tc and the max priority move as the suite grows).
        suite_vectors = evaluate_suite(suite, g, cfg.rand_policy, cfg.cost_variant, rng,
                                       algorithm_name(cfg.algorithm));
        PriorityContext ctx;
        ctx.graph = &g;
        ctx.suite_size = suite.size();
        ctx.max_priority = 0.0;
        for (const ObjectiveVector& v : suite_vectors) {
            ctx.max_priority = std::max(ctx.max_priority, v.priority);
        }
        ctx.cost_variant = cfg.cost_variant;
        ctx.algorithm = algorithm_name(cfg.algorithm);

        std::vector<ObjectiveVector> agent_vectors(agents.size());
        for (std::size_t i = 0; i < agents.size(); ++i) {
            const double priority = path_priority(agents[i].current, g, cfg.rand_policy, rng);
            agent_vectors[i] = {priority, oracle_cost(priority, ctx)};
        }

        if (multi) {
            // The archive tracks the Pareto front of the current evaluation;
            // stale vectors from earlier contexts would misstate it.
            archive.clear();
            for (int k = 0; k < suite.size(); ++k) {
                archive.insert(suite.sequences()[static_cast<std::size_t>(k)],
                               suite_vectors[static_cast<std::size_t>(k)]);
            }
        }

        // Personal and global bests.
        for (std::size_t i = 0; i < agents.size(); ++i) {
            AgentState& agent = agents[i];
            if (!multi) {
                if (!agent.has_best || agent_vectors[i].priority > agent.best_fitness) {
                    agent.has_best = true;
                    agent.best_fitness = agent_vectors[i].priority;
                    agent.best_sequence = agent.current;
                }
            } else {
                if (!agent.has_best) {
                    agent.has_best = true;
                    agent.best_objectives = agent_vectors[i];
                    agent.best_sequence = agent.current;
                } else if (dominates(agent_vectors[i], agent.best_objectives)) {
                    agent.best_objectives = agent_vectors[i];
                    agent.best_sequence = agent.current;
                } else if (!dominates(agent.best_objectives, agent_vectors[i]) &&
                           rng.next_unit() < 0.5) {
                    // mutually non-dominated: fair coin
                    agent.best_objectives = agent_vectors[i];
                    agent.best_sequence = agent.current;
                }
            }
        }
        if (!multi) {
            for (const AgentState& agent : agents) {
                if (agent.best_fitness > gbest_fitness) {
                    gbest_fitness = agent.best_fitness;
                    gbest_sequence = agent.best_sequence;
                }
            }
        }

        // Movement phase.
        if (!firefly) {
            for (AgentState& agent : agents) {
                const TestSequence& target =
                    multi ? archive.select_leader(rng).sequence : gbest_sequence;
                const auto ind_current = edge_indicator(agent.current, g);
                const auto ind_best = edge_indicator(agent.best_sequence, g);
                const auto ind_target = edge_indicator(target, g);
                for (std::size_t k = 0; k < edge_count; ++k) {
                    const double r1 = rng.next_unit();
                    const double r2 = rng.next_unit();
                    agent.velocity[k] = cfg.pso.inertia * agent.velocity[k] +
                                        cfg.pso.cognitive * r1 * (ind_best[k] - ind_current[k]) +
                                        cfg.pso.social * r2 * (ind_target[k] - ind_current[k]);
                    agent.edge_bias[k] = clamp_bias(agent.edge_bias[k] + agent.velocity[k]);
                }
            }
        } else {
            std::vector<double> brightness(agents.size());
            if (!multi) {
                for (std::size_t i = 0; i < agents.size(); ++i) {
                    brightness[i] = agent_vectors[i].priority;
                }
            } else {
                const double lambda = rng.next_unit();
                brightness = scalarized_scores(agent_vectors, lambda);
            }
            std::vector<std::vector<double>> indicators(agents.size());
            for (std::size_t i = 0; i < agents.size(); ++i) {
                indicators[i] = edge_indicator(agents[i].current, g);
            }
            for (std::size_t i = 0; i < agents.size(); ++i) {
                for (std::size_t j = 0; j < agents.size(); ++j) {
                    if (brightness[j] <= brightness[i]) continue;
                    const int r = indicator_distance(agents[i].current, agents[j].current, g);
                    const double beta =
                        attraction_strength(cfg.fa.base_attraction, cfg.fa.absorption, r);
                    for (std::size_t k = 0; k < edge_count; ++k) {
                        agents[i].edge_bias[k] += beta * (indicators[j][k] - agents[i].edge_bias[k]);
                    }
                }
                for (std::size_t k = 0; k < edge_count; ++k) {
                    agents[i].edge_bias[k] = clamp_bias(
                        agents[i].edge_bias[k] + fa_alpha * (rng.next_unit() - 0.5));
                }
            }
            fa_alpha *= cfg.fa.randomization_decay;
        }

        // Trace and termination bookkeeping.
        double trace_value;
        if (multi) {
            trace_value = 0.0;
            for (const ArchiveEntry& e : archive.entries()) {
                trace_value = std::max(trace_value, e.objectives.priority);
            }
        } else {
            trace_value = gbest_fitness;
        }
        result.trace.push_back(trace_value);
        result.iterations_executed = iteration;

        bool stable;
        if (multi) {
            auto snapshot = archive_snapshot(archive);
            stable = snapshot == prev_archive;
            prev_archive = std::move(snapshot);
        } else {
            stable = gbest_fitness == prev_gbest;
            prev_gbest = gbest_fitness;
        }
        stagnation = result.coverage_reached && stable ? stagnation + 1 : 0;
        if (stagnation >= cfg.stagnation_window) break;
    }

    result.suite = std::move(suite);
    result.objectives = std::move(suite_vectors);
    if (multi) result.archive = archive.entries();
    result.distinct_sequences_evaluated = static_cast<int>(seen_sequences.size());
    result.final_agents = std::move(agents);
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

namespace {

RunResult run_checked(const StateGraph& g, const SwarmConfig& cfg, Algorithm expected) {
    if (cfg.algorithm != expected) {
        throw std::invalid_argument("config algorithm does not match the requested driver");
    }
    return run_optimizer(g, cfg);
}

}  // namespace

RunResult run_pso(const StateGraph& g, const SwarmConfig& cfg) {
    return run_checked(g, cfg, Algorithm::Pso);
}

RunResult run_mopso(const StateGraph& g, const SwarmConfig& cfg) {
    return run_checked(g, cfg, Algorithm::Mopso);
}

RunResult run_fa(const StateGraph& g, const SwarmConfig& cfg) {
    return run_checked(g, cfg, Algorithm::Fa);
}

RunResult run_mofa(const StateGraph& g, const SwarmConfig& cfg) {
    return run_checked(g, cfg, Algorithm::Mofa);
}

}  // namespace seqswarm
