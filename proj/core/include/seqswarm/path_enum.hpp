#ifndef SEQSWARM_PATH_ENUM_HPP
#define SEQSWARM_PATH_ENUM_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqswarm/random.hpp"
#include "seqswarm/state_graph.hpp"

namespace seqswarm {

/// A simple path from the start node to an exit node. No repeated nodes,
/// hence no repeated transitions.
class TestSequence {
public:
    TestSequence() = default;
    explicit TestSequence(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {}

    const std::vector<NodeId>& nodes() const { return nodes_; }
    std::size_t length() const { return nodes_.size(); }

    /// Consecutive (from,to) pairs.
    std::vector<Edge> edges() const;

    /// Comma-joined node ids, e.g. "1,2,3,5,7".
    std::string to_string() const;
    static TestSequence from_string(std::string_view text);

    auto operator<=>(const TestSequence&) const = default;

private:
    std::vector<NodeId> nodes_;
};

/// True iff seq starts at g.start, ends at an exit, repeats no node, and
/// every consecutive pair is an edge of g.
bool is_valid_sequence(const TestSequence& seq, const StateGraph& g);

/// Ordered, duplicate-free set of sequences plus their covered-edge union.
/// tc (the suite size) is size().
class PathSuite {
public:
    const std::vector<TestSequence>& sequences() const { return sequences_; }
    int size() const { return static_cast<int>(sequences_.size()); }
    bool empty() const { return sequences_.empty(); }
    bool contains(const TestSequence& seq) const;

    const std::set<Edge>& covered_edges() const { return covered_; }

    /// Appends without the acceptance rule; used by the enumerator.
    void push_back(TestSequence seq);

private:
    std::vector<TestSequence> sequences_;
    std::set<Edge> covered_;
};

/// Per-agent record of nodes visited in the walk in progress; mirrors the
/// node list of the partial sequence.
struct VisitedList {
    std::vector<NodeId> order;
    std::vector<char> seen;  // indexed by node id

    explicit VisitedList(int node_count) : seen(static_cast<std::size_t>(node_count) + 1, 0) {}
    bool contains(NodeId n) const { return seen[static_cast<std::size_t>(n)] != 0; }
    void add(NodeId n) {
        order.push_back(n);
        seen[static_cast<std::size_t>(n)] = 1;
    }
};

/// Walk reached a node whose successors are all already visited.
class DeadEndAbort : public std::runtime_error {
public:
    DeadEndAbort() : std::runtime_error("walk dead-ended before reaching an exit") {}
};

/// Out of retry budget (see walk_retrying).
class WalkExhausted : public std::runtime_error {
public:
    explicit WalkExhausted(int attempts)
        : std::runtime_error("walk aborted " + std::to_string(attempts) + " times in a row") {}
};

/// One guided agent walk from start to an exit.
///
/// Movement rule, in order, at each node:
///  - at an exit node: stop if it has no outgoing edges, or if all its
///    outgoing edges are already in `covered`, or if every successor is
///    already visited; otherwise stop with probability 1/2 (one draw;
///    u < 0.5 continues);
///  - at a non-exit node with every successor visited: DeadEndAbort;
///  - at a predicate node with >= 2 unvisited successors: pick the next edge
///    with probability proportional to guid(i,j) * (2 if (i,j) not in
///    `covered` else 1), successors in ascending id order (one draw);
///  - otherwise: take the single unvisited successor (no draw).
TestSequence walk(const StateGraph& g, const GuidanceMatrix& guid,
                  const std::set<Edge>& covered, RandomSource& rng);

/// walk, retried on DeadEndAbort up to max_attempts times with fresh draws.
/// Throws WalkExhausted when the budget runs out.
TestSequence walk_retrying(const StateGraph& g, const GuidanceMatrix& guid,
                           const std::set<Edge>& covered, RandomSource& rng,
                           int max_attempts = 50);

/// Exhaustive DFS of every simple path from start that ends at an exit node,
/// including paths that stop at an intermediate exit. Deterministic
/// lexicographic order. Desk-scale oracle: throws GraphError(GraphTooLarge)
/// for node_count > 20.
PathSuite enumerate_all_sequences(const StateGraph& g);

/// True iff the union of suite edges equals the graph edge set
/// (transition coverage).
bool coverage_complete(const PathSuite& suite, const StateGraph& g);

/// Appends cand iff it is not a duplicate and covers at least one edge not
/// yet covered by the suite. Returns whether it was appended. Guidance decay
/// is the caller's job (decay_guidance).
bool accept_into_suite(PathSuite& suite, const TestSequence& cand);

/// Multiplies guidance on the sequence's edges by `factor`, clamped below at
/// `floor`, nudging later agents toward unexplored branches.
void decay_guidance(GuidanceMatrix& guid, const TestSequence& seq,
                    double factor = 0.8, double floor = 0.05);

}  // namespace seqswarm

#endif
