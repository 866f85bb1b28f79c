#include "seqswarm/state_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include <json.hpp>

namespace seqswarm {

namespace {

void require(bool ok, GraphErrorKind kind, const std::string& what) {
    if (!ok) throw GraphError(kind, what);
}

// Forward reachability from start over the successor lists.
std::vector<char> reachable_from_start(int n, NodeId start,
                                       const std::vector<std::vector<NodeId>>& succ) {
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    std::queue<NodeId> frontier;
    seen[static_cast<std::size_t>(start)] = 1;
    frontier.push(start);
    while (!frontier.empty()) {
        NodeId cur = frontier.front();
        frontier.pop();
        for (NodeId next : succ[static_cast<std::size_t>(cur)]) {
            if (!seen[static_cast<std::size_t>(next)]) {
                seen[static_cast<std::size_t>(next)] = 1;
                frontier.push(next);
            }
        }
    }
    return seen;
}

}  // namespace

StateGraph StateGraph::create(int node_count, std::vector<Edge> edges, NodeId start,
                              std::vector<NodeId> exits, std::vector<std::string> labels) {
    require(node_count > 0, GraphErrorKind::EmptyGraph, "graph has no nodes");
    require(!edges.empty(), GraphErrorKind::EmptyGraph, "graph has no edges");

    auto in_range = [node_count](NodeId n) { return n >= 1 && n <= node_count; };

    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        require(in_range(e.from) && in_range(e.to), GraphErrorKind::DanglingEdge,
                "edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                    " references an unknown node");
        require(e.from != e.to, GraphErrorKind::SelfLoop,
                "self-loop on node " + std::to_string(e.from));
        require(i == 0 || !(edges[i - 1] == e), GraphErrorKind::DuplicateEdge,
                "duplicate edge " + std::to_string(e.from) + "->" + std::to_string(e.to));
    }

    require(in_range(start), GraphErrorKind::InvalidEndpoint,
            "start node " + std::to_string(start) + " is not a node");
    require(!exits.empty(), GraphErrorKind::InvalidEndpoint, "exit set is empty");
    std::sort(exits.begin(), exits.end());
    exits.erase(std::unique(exits.begin(), exits.end()), exits.end());
    for (NodeId e : exits) {
        require(in_range(e), GraphErrorKind::InvalidEndpoint,
                "exit node " + std::to_string(e) + " is not a node");
    }

    StateGraph g;
    g.node_count_ = node_count;
    g.start_ = start;
    g.edges_ = std::move(edges);
    g.exits_ = std::move(exits);

    g.successors_.assign(static_cast<std::size_t>(node_count) + 1, {});
    g.in_degree_.assign(static_cast<std::size_t>(node_count) + 1, 0);
    g.edge_index_.assign(static_cast<std::size_t>(node_count) + 1,
                         std::vector<int>(static_cast<std::size_t>(node_count) + 1, -1));
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
        const Edge& e = g.edges_[i];
        g.successors_[static_cast<std::size_t>(e.from)].push_back(e.to);
        g.in_degree_[static_cast<std::size_t>(e.to)] += 1;
        g.edge_index_[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(e.to)] =
            static_cast<int>(i);
    }
    // edges_ is sorted, so successor lists are already ascending.

    labels.resize(static_cast<std::size_t>(node_count));
    g.labels_ = std::move(labels);

    auto seen = reachable_from_start(node_count, start, g.successors_);
    for (NodeId n = 1; n <= node_count; ++n) {
        require(seen[static_cast<std::size_t>(n)], GraphErrorKind::UnreachableNode,
                "node " + std::to_string(n) + " is unreachable from start");
    }

    // Backward reachability from the exit set over reversed edges.
    std::vector<std::vector<NodeId>> pred(static_cast<std::size_t>(node_count) + 1);
    for (const Edge& e : g.edges_) pred[static_cast<std::size_t>(e.to)].push_back(e.from);
    std::vector<char> reaches_exit(static_cast<std::size_t>(node_count) + 1, 0);
    std::queue<NodeId> frontier;
    for (NodeId e : g.exits_) {
        reaches_exit[static_cast<std::size_t>(e)] = 1;
        frontier.push(e);
    }
    while (!frontier.empty()) {
        NodeId cur = frontier.front();
        frontier.pop();
        for (NodeId p : pred[static_cast<std::size_t>(cur)]) {
            if (!reaches_exit[static_cast<std::size_t>(p)]) {
                reaches_exit[static_cast<std::size_t>(p)] = 1;
                frontier.push(p);
            }
        }
    }
    for (NodeId n = 1; n <= node_count; ++n) {
        require(reaches_exit[static_cast<std::size_t>(n)], GraphErrorKind::NoExitReachable,
                "node " + std::to_string(n) + " cannot reach any exit");
    }

    return g;
}

bool StateGraph::is_exit(NodeId n) const {
    return std::binary_search(exits_.begin(), exits_.end(), n);
}

bool StateGraph::has_edge(NodeId from, NodeId to) const {
    return edge_index(from, to) >= 0;
}

int StateGraph::edge_index(NodeId from, NodeId to) const {
    if (from < 1 || from > node_count_ || to < 1 || to > node_count_) return -1;
    return edge_index_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
}

const std::vector<NodeId>& StateGraph::successors(NodeId n) const {
    return successors_[static_cast<std::size_t>(n)];
}

int StateGraph::out_degree(NodeId n) const {
    return static_cast<int>(successors_[static_cast<std::size_t>(n)].size());
}

int StateGraph::in_degree(NodeId n) const {
    return in_degree_[static_cast<std::size_t>(n)];
}

const std::string& StateGraph::label(NodeId n) const {
    return labels_[static_cast<std::size_t>(n - 1)];
}

int AdjacencyMatrix::true_count() const {
    int count = 0;
    for (char c : cells_) count += (c != 0);
    return count;
}

StateGraph parse_graph(std::string_view document) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(GraphErrorKind::MalformedDocument, e.what());
    }

    try {
        if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges") ||
            !doc.contains("start") || !doc.contains("exits")) {
            throw GraphError(GraphErrorKind::MalformedDocument,
                             "document must be an object with nodes, edges, start, exits");
        }
        if (!doc["nodes"].is_array() || doc["nodes"].empty()) {
            throw GraphError(GraphErrorKind::EmptyGraph, "nodes list is empty");
        }

        // Renumber document ids to 1..N preserving input order.
        std::map<std::int64_t, NodeId> renumber;
        std::vector<std::string> labels;
        for (const auto& node : doc["nodes"]) {
            std::int64_t id;
            std::string label;
            if (node.is_object()) {
                if (!node.contains("id") || !node["id"].is_number_integer()) {
                    throw GraphError(GraphErrorKind::MalformedDocument,
                                     "node entry lacks an integer id");
                }
                id = node["id"].get<std::int64_t>();
                label = node.value("label", std::string{});
            } else if (node.is_number_integer()) {
                id = node.get<std::int64_t>();
            } else {
                throw GraphError(GraphErrorKind::MalformedDocument,
                                 "node entry is neither an object nor an integer");
            }
            if (id <= 0) {
                throw GraphError(GraphErrorKind::MalformedDocument,
                                 "node id " + std::to_string(id) + " is not positive");
            }
            if (renumber.count(id)) {
                throw GraphError(GraphErrorKind::MalformedDocument,
                                 "node id " + std::to_string(id) + " appears twice");
            }
            NodeId dense = static_cast<NodeId>(renumber.size()) + 1;
            renumber[id] = dense;
            labels.push_back(label);
        }

        auto map_id = [&renumber](std::int64_t id, GraphErrorKind kind) {
            auto it = renumber.find(id);
            if (it == renumber.end()) {
                throw GraphError(kind, "reference to unknown node " + std::to_string(id));
            }
            return it->second;
        };

        std::vector<Edge> edges;
        if (!doc["edges"].is_array()) {
            throw GraphError(GraphErrorKind::MalformedDocument, "edges must be an array");
        }
        for (const auto& pair : doc["edges"]) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                !pair[1].is_number_integer()) {
                throw GraphError(GraphErrorKind::MalformedDocument,
                                 "edge entry must be a [from, to] integer pair");
            }
            edges.push_back({map_id(pair[0].get<std::int64_t>(), GraphErrorKind::DanglingEdge),
                             map_id(pair[1].get<std::int64_t>(), GraphErrorKind::DanglingEdge)});
        }

        if (!doc["start"].is_number_integer()) {
            throw GraphError(GraphErrorKind::MalformedDocument, "start must be an integer");
        }
        NodeId start = map_id(doc["start"].get<std::int64_t>(), GraphErrorKind::InvalidEndpoint);

        if (!doc["exits"].is_array() || doc["exits"].empty()) {
            throw GraphError(GraphErrorKind::InvalidEndpoint, "exits must be a nonempty array");
        }
        std::vector<NodeId> exits;
        for (const auto& e : doc["exits"]) {
            if (!e.is_number_integer()) {
                throw GraphError(GraphErrorKind::MalformedDocument, "exit must be an integer");
            }
            exits.push_back(map_id(e.get<std::int64_t>(), GraphErrorKind::InvalidEndpoint));
        }

        return StateGraph::create(static_cast<int>(renumber.size()), std::move(edges), start,
                                  std::move(exits), std::move(labels));
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(GraphErrorKind::MalformedDocument, e.what());
    }
}

std::string serialize_graph(const StateGraph& g) {
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (NodeId n = 1; n <= g.node_count(); ++n) {
        doc["nodes"].push_back({{"id", n}, {"label", g.label(n)}});
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges()) {
        doc["edges"].push_back({e.from, e.to});
    }
    doc["start"] = g.start();
    doc["exits"] = g.exits();
    return doc.dump(2) + "\n";
}

std::vector<NodeId> predicate_nodes(const StateGraph& g) {
    std::vector<NodeId> result;
    for (NodeId n = 1; n <= g.node_count(); ++n) {
        if (g.out_degree(n) > 1) result.push_back(n);
    }
    return result;
}

AdjacencyMatrix adjacency_matrix(const StateGraph& g) {
    AdjacencyMatrix m(g.node_count());
    for (const Edge& e : g.edges()) m.set(e.from, e.to, true);
    return m;
}

GuidanceMatrix init_guidance(const StateGraph& g) {
    GuidanceMatrix m(g.node_count());
    for (const Edge& e : g.edges()) m.set(e.from, e.to, 1.0);
    return m;
}

StateGraph atm_fixture() {
    std::vector<Edge> edges = {{1, 2}, {2, 3}, {2, 4}, {2, 7}, {3, 4}, {3, 5}, {3, 7},
                               {4, 7}, {4, 8}, {5, 6}, {5, 7}, {6, 7}, {7, 8}};
    std::vector<std::string> labels = {"Start",          "Card Accepted",  "PIN Verified",
                                       "Transaction Selected", "Amount Entered", "Cash Dispensed",
                                       "Receipt Offered", "Session Closed"};
    return StateGraph::create(8, std::move(edges), 1, {7, 8}, std::move(labels));
}

}  // namespace seqswarm
