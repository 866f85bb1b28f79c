#include <doctest.h>

#include <set>

#include "seqswarm/state_graph.hpp"
#include "test_support.hpp"

using namespace seqswarm;

namespace {

const char* kAtmDocument = R"({
  "nodes": [{"id":1,"label":"Start"},{"id":2},{"id":3},{"id":4},
            {"id":5},{"id":6},{"id":7},{"id":8}],
  "edges": [[1,2],[2,3],[2,4],[2,7],[3,4],[3,5],[3,7],
            [4,7],[4,8],[5,6],[5,7],[6,7],[7,8]],
  "start": 1,
  "exits": [7,8]
})";

}  // namespace

TEST_CASE("atm fixture matches the reference diagram") {
    const StateGraph g = atm_fixture();
    CHECK(g.node_count() == 8);
    CHECK(g.edge_count() == 13);
    CHECK(g.start() == 1);
    CHECK(g.exits() == std::vector<NodeId>{7, 8});
    CHECK(predicate_nodes(g) == std::vector<NodeId>{2, 3, 4, 5});
    CHECK(g.in_degree(1) == 0);
    CHECK(g.has_edge(2, 7));
    CHECK_FALSE(g.has_edge(7, 2));
}

TEST_CASE("parse_graph accepts the ATM document") {
    const StateGraph g = parse_graph(kAtmDocument);
    CHECK(g.node_count() == 8);
    CHECK(g.edge_count() == 13);
    CHECK(predicate_nodes(g).size() == 4);
    CHECK(g.label(1) == "Start");
    CHECK(g.label(2) == "");
}

TEST_CASE("parse_graph accepts a minimal two-node document") {
    const StateGraph g = parse_graph(
        R"({"nodes":[{"id":1},{"id":2}],"edges":[[1,2]],"start":1,"exits":[2]})");
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.is_exit(2));
}

TEST_CASE("parse_graph renumbers sparse ids by input order") {
    const StateGraph g = parse_graph(
        R"({"nodes":[{"id":10,"label":"a"},{"id":5,"label":"b"}],
            "edges":[[10,5]],"start":10,"exits":[5]})");
    CHECK(g.node_count() == 2);
    CHECK(g.start() == 1);
    CHECK(g.label(1) == "a");
    CHECK(g.has_edge(1, 2));
    CHECK(g.exits() == std::vector<NodeId>{2});
}

TEST_CASE("parse_graph error taxonomy") {
    auto kind_of = [](const char* doc) {
        try {
            parse_graph(doc);
        } catch (const GraphError& e) {
            return e.kind();
        }
        FAIL("expected a GraphError");
        return GraphErrorKind::MalformedDocument;
    };

    CHECK(kind_of("not json at all") == GraphErrorKind::MalformedDocument);
    CHECK(kind_of(R"({"nodes":[],"edges":[],"start":1,"exits":[1]})") ==
          GraphErrorKind::EmptyGraph);
    // dangling edge on an 8-node list
    CHECK(kind_of(R"({"nodes":[{"id":1},{"id":2},{"id":3},{"id":4},{"id":5},{"id":6},
                              {"id":7},{"id":8}],
                      "edges":[[1,2],[3,9]],"start":1,"exits":[2]})") ==
          GraphErrorKind::DanglingEdge);
    CHECK(kind_of(R"({"nodes":[{"id":1},{"id":2}],"edges":[[1,1],[1,2]],
                      "start":1,"exits":[2]})") == GraphErrorKind::SelfLoop);
    CHECK(kind_of(R"({"nodes":[{"id":1},{"id":2}],"edges":[[1,2],[1,2]],
                      "start":1,"exits":[2]})") == GraphErrorKind::DuplicateEdge);
    // node 3 has no incoming edge
    CHECK(kind_of(R"({"nodes":[{"id":1},{"id":2},{"id":3}],"edges":[[1,2],[3,2]],
                      "start":1,"exits":[2]})") == GraphErrorKind::UnreachableNode);
    // node 3 cannot reach the exit
    CHECK(kind_of(R"({"nodes":[{"id":1},{"id":2},{"id":3}],"edges":[[1,2],[1,3]],
                      "start":1,"exits":[2]})") == GraphErrorKind::NoExitReachable);
    CHECK(kind_of(R"({"nodes":[{"id":1},{"id":2}],"edges":[[1,2]],"start":1,"exits":[]})") ==
          GraphErrorKind::InvalidEndpoint);
}

TEST_CASE("adjacency matrix mirrors the edge set") {
    const StateGraph g = atm_fixture();
    const AdjacencyMatrix m = adjacency_matrix(g);
    CHECK(m.true_count() == 13);
    for (const Edge& e : g.edges()) CHECK(m.at(e.from, e.to));
    // round-trip: reconstruct the edge set from the matrix
    std::set<Edge> reconstructed;
    for (NodeId i = 1; i <= g.node_count(); ++i) {
        for (NodeId j = 1; j <= g.node_count(); ++j) {
            if (m.at(i, j)) reconstructed.insert({i, j});
        }
    }
    CHECK(reconstructed == std::set<Edge>(g.edges().begin(), g.edges().end()));
}

TEST_CASE("single-edge adjacency") {
    const StateGraph g = StateGraph::create(2, {{1, 2}}, 1, {2});
    const AdjacencyMatrix m = adjacency_matrix(g);
    CHECK(m.true_count() == 1);
    CHECK(m.at(1, 2));
    CHECK_FALSE(m.at(2, 1));
}

TEST_CASE("guidance initialization puts 1.0 exactly on edges") {
    const StateGraph g = atm_fixture();
    const GuidanceMatrix guid = init_guidance(g);
    const AdjacencyMatrix adj = adjacency_matrix(g);
    int ones = 0;
    for (NodeId i = 1; i <= g.node_count(); ++i) {
        for (NodeId j = 1; j <= g.node_count(); ++j) {
            CHECK((guid.at(i, j) > 0.0) == adj.at(i, j));
            if (guid.at(i, j) > 0.0) {
                CHECK(guid.at(i, j) == 1.0);
                ++ones;
            }
        }
    }
    CHECK(ones == 13);
}

TEST_CASE("predicate node counting on toy graphs") {
    const StateGraph chain = StateGraph::create(3, {{1, 2}, {2, 3}}, 1, {3});
    CHECK(predicate_nodes(chain).empty());

    const StateGraph star = StateGraph::create(4, {{1, 2}, {1, 3}, {1, 4}}, 1, {2, 3, 4});
    CHECK(predicate_nodes(star) == std::vector<NodeId>{1});
}

TEST_CASE("predicate count equals rows of the adjacency matrix with >=2 true entries") {
    Mt19937Source rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        const StateGraph g = testing::random_valid_graph(rng);
        const AdjacencyMatrix m = adjacency_matrix(g);
        int heavy_rows = 0;
        for (NodeId i = 1; i <= g.node_count(); ++i) {
            int row = 0;
            for (NodeId j = 1; j <= g.node_count(); ++j) row += m.at(i, j);
            heavy_rows += row >= 2;
        }
        CHECK(static_cast<int>(predicate_nodes(g).size()) == heavy_rows);
    }
}

TEST_CASE("serialize / parse round-trip") {
    Mt19937Source rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const StateGraph g = testing::random_valid_graph(rng);
        const StateGraph back = parse_graph(serialize_graph(g));
        CHECK(back.node_count() == g.node_count());
        CHECK(back.edges() == g.edges());
        CHECK(back.start() == g.start());
        CHECK(back.exits() == g.exits());
    }
    // labels survive
    const StateGraph atm = atm_fixture();
    const StateGraph back = parse_graph(serialize_graph(atm));
    for (NodeId n = 1; n <= atm.node_count(); ++n) CHECK(back.label(n) == atm.label(n));
}

TEST_CASE("serializer emits keys in the documented order") {
    const std::string doc = serialize_graph(atm_fixture());
    const auto nodes_pos = doc.find("\"nodes\"");
    const auto edges_pos = doc.find("\"edges\"");
    const auto start_pos = doc.find("\"start\"");
    const auto exits_pos = doc.find("\"exits\"");
    REQUIRE(nodes_pos != std::string::npos);
    CHECK(nodes_pos < edges_pos);
    CHECK(edges_pos < start_pos);
    CHECK(start_pos < exits_pos);
}
