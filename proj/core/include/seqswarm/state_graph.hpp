#ifndef SEQSWARM_STATE_GRAPH_HPP
#define SEQSWARM_STATE_GRAPH_HPP

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seqswarm {

/// Node ids are dense positive integers 1..N. External labels are metadata.
using NodeId = int;

struct Edge {
    NodeId from = 0;
    NodeId to = 0;
    auto operator<=>(const Edge&) const = default;
};

enum class GraphErrorKind {
    MalformedDocument,
    EmptyGraph,
    DanglingEdge,
    SelfLoop,
    DuplicateEdge,
    InvalidEndpoint,   // start or exit references an unknown node
    UnreachableNode,
    NoExitReachable,
    GraphTooLarge,
};

class GraphError : public std::runtime_error {
public:
    GraphError(GraphErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    GraphErrorKind kind() const { return kind_; }

private:
    GraphErrorKind kind_;
};

/// Directed state-transition diagram. Immutable after construction and safe
/// to share read-only across concurrent optimizer runs.
///
/// Validity (enforced by create/parse_graph): at least one node and one edge,
/// no self-loops, no duplicate edges, nonempty exit set, every node reachable
/// from start, every node able to reach some exit.
class StateGraph {
public:
    /// Validates and builds. Node count fixes the id range 1..N; edges, start
    /// and exits must reference ids in that range. Labels are optional
    /// metadata (padded with empty strings).
    static StateGraph create(int node_count, std::vector<Edge> edges, NodeId start,
                             std::vector<NodeId> exits,
                             std::vector<std::string> labels = {});

    int node_count() const { return node_count_; }
    NodeId start() const { return start_; }

    /// Edge list in canonical (from, to) order; index into this list is the
    /// edge index used by bias/indicator vectors.
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Ascending exit node ids.
    const std::vector<NodeId>& exits() const { return exits_; }
    bool is_exit(NodeId n) const;

    bool has_edge(NodeId from, NodeId to) const;
    /// Index of (from,to) in edges(), or -1.
    int edge_index(NodeId from, NodeId to) const;

    /// Successors of n in ascending node id order.
    const std::vector<NodeId>& successors(NodeId n) const;
    int out_degree(NodeId n) const;
    int in_degree(NodeId n) const;

    const std::string& label(NodeId n) const;

private:
    StateGraph() = default;

    int node_count_ = 0;
    NodeId start_ = 0;
    std::vector<Edge> edges_;
    std::vector<NodeId> exits_;
    std::vector<std::vector<NodeId>> successors_;  // index 0 unused
    std::vector<int> in_degree_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> edge_index_;     // -1 where no edge
};

/// N x N boolean adjacency; entry (i,j) true iff edge i->j exists.
class AdjacencyMatrix {
public:
    explicit AdjacencyMatrix(int n) : n_(n), cells_(static_cast<std::size_t>(n) * n, false) {}

    int size() const { return n_; }
    bool at(NodeId from, NodeId to) const { return cells_[index(from, to)]; }
    void set(NodeId from, NodeId to, bool value) { cells_[index(from, to)] = value; }
    int true_count() const;

private:
    std::size_t index(NodeId from, NodeId to) const {
        return static_cast<std::size_t>(from - 1) * n_ + (to - 1);
    }
    int n_;
    std::vector<char> cells_;
};

/// N x N non-negative weights steering agent walks; nonzero only on edges.
class GuidanceMatrix {
public:
    explicit GuidanceMatrix(int n) : n_(n), cells_(static_cast<std::size_t>(n) * n, 0.0) {}

    int size() const { return n_; }
    double at(NodeId from, NodeId to) const { return cells_[index(from, to)]; }
    void set(NodeId from, NodeId to, double w) { cells_[index(from, to)] = w; }

private:
    std::size_t index(NodeId from, NodeId to) const {
        return static_cast<std::size_t>(from - 1) * n_ + (to - 1);
    }
    int n_;
    std::vector<double> cells_;
};

/// Parses the JSON graph document format:
///   {"nodes":[{"id":1,"label":"Start"},...], "edges":[[1,2],...],
///    "start":1, "exits":[7,8]}
/// Keys may appear in any order. Node ids in the document may be arbitrary
/// positive integers; they are renumbered to 1..N preserving input order.
StateGraph parse_graph(std::string_view document);

/// Emits the JSON document with keys in nodes, edges, start, exits order.
/// parse_graph(serialize_graph(g)) reproduces g exactly.
std::string serialize_graph(const StateGraph& g);

/// Decision nodes: exactly the nodes with out-degree > 1, ascending.
std::vector<NodeId> predicate_nodes(const StateGraph& g);

AdjacencyMatrix adjacency_matrix(const StateGraph& g);

/// Every existing edge gets initial weight 1.0; non-edges 0.
GuidanceMatrix init_guidance(const StateGraph& g);

/// The canonical 8-node ATM transaction diagram: 13 edges, start 1,
/// exits {7,8}, 4 predicate nodes.
StateGraph atm_fixture();

}  // namespace seqswarm

#endif
