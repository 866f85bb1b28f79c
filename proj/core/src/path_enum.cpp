#include "seqswarm/path_enum.hpp"

#include <algorithm>
#include <charconv>

namespace seqswarm {

std::vector<Edge> TestSequence::edges() const {
    std::vector<Edge> result;
    if (nodes_.size() < 2) return result;
    result.reserve(nodes_.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        result.push_back({nodes_[i], nodes_[i + 1]});
    }
    return result;
}

std::string TestSequence::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(nodes_[i]);
    }
    return out;
}

TestSequence TestSequence::from_string(std::string_view text) {
    std::vector<NodeId> nodes;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        NodeId value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + comma, value);
        if (ec != std::errc{} || ptr != text.data() + comma) {
            throw std::invalid_argument("bad sequence literal: " + std::string(text));
        }
        nodes.push_back(value);
        pos = comma + 1;
    }
    return TestSequence(std::move(nodes));
}

bool is_valid_sequence(const TestSequence& seq, const StateGraph& g) {
    const auto& nodes = seq.nodes();
    if (nodes.empty()) return false;
    if (nodes.front() != g.start()) return false;
    if (!g.is_exit(nodes.back())) return false;
    std::vector<char> seen(static_cast<std::size_t>(g.node_count()) + 1, 0);
    for (NodeId n : nodes) {
        if (n < 1 || n > g.node_count()) return false;
        if (seen[static_cast<std::size_t>(n)]) return false;
        seen[static_cast<std::size_t>(n)] = 1;
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!g.has_edge(nodes[i], nodes[i + 1])) return false;
    }
    return true;
}

bool PathSuite::contains(const TestSequence& seq) const {
    return std::find(sequences_.begin(), sequences_.end(), seq) != sequences_.end();
}

void PathSuite::push_back(TestSequence seq) {
    for (const Edge& e : seq.edges()) covered_.insert(e);
    sequences_.push_back(std::move(seq));
}

TestSequence walk(const StateGraph& g, const GuidanceMatrix& guid,
                  const std::set<Edge>& covered, RandomSource& rng) {
    VisitedList visited(g.node_count());
    NodeId current = g.start();
    visited.add(current);

    for (;;) {
        const auto& successors = g.successors(current);

        if (g.is_exit(current)) {
            if (successors.empty()) break;
            bool all_covered = std::all_of(successors.begin(), successors.end(),
                                           [&](NodeId s) { return covered.count({current, s}); });
            if (all_covered) break;
            bool any_unvisited = std::any_of(successors.begin(), successors.end(),
                                             [&](NodeId s) { return !visited.contains(s); });
            if (!any_unvisited) break;
            if (rng.next_unit() >= 0.5) break;  // u < 0.5 continues past the exit
        }

        std::vector<NodeId> eligible;
        for (NodeId s : successors) {
            if (!visited.contains(s)) eligible.push_back(s);
        }
        if (eligible.empty()) throw DeadEndAbort();

        NodeId next;
        if (g.out_degree(current) > 1 && eligible.size() > 1) {
            // Guidance weight with a freshness bonus for uncovered transitions.
            std::vector<double> weights(eligible.size());
            for (std::size_t i = 0; i < eligible.size(); ++i) {
                double bonus = covered.count({current, eligible[i]}) ? 1.0 : 2.0;
                weights[i] = guid.at(current, eligible[i]) * bonus;
            }
            next = eligible[pick_weighted(weights, rng)];
        } else {
            next = eligible.front();
        }
        visited.add(next);
        current = next;
    }

    return TestSequence(visited.order);
}

TestSequence walk_retrying(const StateGraph& g, const GuidanceMatrix& guid,
                           const std::set<Edge>& covered, RandomSource& rng,
                           int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        try {
            return walk(g, guid, covered, rng);
        } catch (const DeadEndAbort&) {
            // fresh draws on the next attempt
        }
    }
    throw WalkExhausted(max_attempts);
}

PathSuite enumerate_all_sequences(const StateGraph& g) {
    if (g.node_count() > 20) {
        throw GraphError(GraphErrorKind::GraphTooLarge,
                         "exhaustive enumeration is limited to 20 nodes");
    }

    PathSuite suite;
    std::vector<NodeId> path = {g.start()};
    std::vector<char> on_path(static_cast<std::size_t>(g.node_count()) + 1, 0);
    on_path[static_cast<std::size_t>(g.start())] = 1;

    // Iterative DFS emitting at every exit node visit, successors ascending,
    // which yields lexicographic order.
    struct Frame {
        NodeId node;
        std::size_t next_child = 0;
    };
    std::vector<Frame> stack = {{g.start()}};
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next_child == 0 && g.is_exit(top.node)) {
            suite.push_back(TestSequence(path));
        }
        const auto& successors = g.successors(top.node);
        bool descended = false;
        while (top.next_child < successors.size()) {
            NodeId child = successors[top.next_child++];
            if (on_path[static_cast<std::size_t>(child)]) continue;
            path.push_back(child);
            on_path[static_cast<std::size_t>(child)] = 1;
            stack.push_back({child});
            descended = true;
            break;
        }
        if (!descended) {
            on_path[static_cast<std::size_t>(top.node)] = 0;
            path.pop_back();
            stack.pop_back();
        }
    }
    return suite;
}

bool coverage_complete(const PathSuite& suite, const StateGraph& g) {
    if (static_cast<int>(suite.covered_edges().size()) != g.edge_count()) return false;
    for (const Edge& e : suite.covered_edges()) {
        if (!g.has_edge(e.from, e.to)) return false;
    }
    return true;
}

bool accept_into_suite(PathSuite& suite, const TestSequence& cand) {
    if (suite.contains(cand)) return false;
    const auto edges = cand.edges();
    bool novel = std::any_of(edges.begin(), edges.end(),
                             [&](const Edge& e) { return !suite.covered_edges().count(e); });
    if (!novel) return false;
    suite.push_back(cand);
    return true;
}

void decay_guidance(GuidanceMatrix& guid, const TestSequence& seq, double factor,
                    double floor) {
    for (const Edge& e : seq.edges()) {
        guid.set(e.from, e.to, std::max(floor, guid.at(e.from, e.to) * factor));
    }
}

}  // namespace seqswarm
