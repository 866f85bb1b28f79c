#include <doctest.h>

#include <cmath>

#include "seqswarm/objectives.hpp"
#include "seqswarm/state_graph.hpp"
#include "test_support.hpp"

using namespace seqswarm;
namespace st = seqswarm::testing;

namespace {

StateGraph chain2() {
    return StateGraph::create(2, {{1, 2}}, 1, {2});
}

}  // namespace

TEST_CASE("cyclomatic term counts predicate nodes on the path plus one") {
    const StateGraph g = atm_fixture();
    // predicate set is {2,3,4,5}
    CHECK(cyclomatic_term(TestSequence::from_string("1,2,7,8"), g) == 2);
    CHECK(cyclomatic_term(TestSequence::from_string("1,2,3,5,6,7"), g) == 4);
    CHECK(cyclomatic_term(TestSequence::from_string("1,2,3,4,8"), g) == 4);

    const StateGraph chain = StateGraph::create(3, {{1, 2}, {2, 3}}, 1, {3});
    CHECK(cyclomatic_term(TestSequence::from_string("1,2,3"), chain) == 1);
}

TEST_CASE("paper-formula rand term evaluates the adopted reading") {
    RandPolicy paper;
    st::ScriptedSource no_draws({});
    CHECK(rand_term(paper, 1, 8, no_draws) == doctest::Approx(0.025));
    CHECK(rand_term(paper, 8, 8, no_draws) == doctest::Approx(0.9));
    CHECK(rand_term(paper, 1, 2, no_draws) == doctest::Approx(0.4));
    // clamp floor engages where the raw formula dips below 0.01
    CHECK(rand_term(paper, 1, 100, no_draws) == doctest::Approx(0.01));
    // never draws
    CHECK(no_draws.exhausted());
}

TEST_CASE("uniform rand term stays in (0,1] and clamps at the floor") {
    RandPolicy uniform{RandVariant::SeededUniform, 0.01};
    Mt19937Source rng(12);
    for (int i = 0; i < 1000; ++i) {
        const double v = rand_term(uniform, 1, 8, rng);
        CHECK(v >= 0.01);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("path priority on the two-node chain") {
    const StateGraph g = chain2();
    st::ScriptedSource no_draws({});
    const double priority =
        path_priority(TestSequence::from_string("1,2"), g, RandPolicy{}, no_draws);
    // b(1)=100/0.4=250, b(2)=100/0.9=111.11..., mean = 180.5555...
    CHECK(priority == doctest::Approx((100.0 / 0.4 + 100.0 / 0.9) / 2.0).epsilon(1e-12));
    CHECK(priority == doctest::Approx(180.5556).epsilon(1e-4));
}

TEST_CASE("constant-rand stub makes priority exactly 100/(CC*r)") {
    const StateGraph g = atm_fixture();
    RandPolicy uniform{RandVariant::SeededUniform, 0.01};
    // library maps u to 1-u, so feed 0.5 to obtain rand = 0.5
    st::ConstantSource half(0.5);
    const TestSequence seq = TestSequence::from_string("1,2,7,8");  // CC = 2
    CHECK(path_priority(seq, g, uniform, half) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("priority is homogeneous of degree -1 in rand") {
    const StateGraph g = atm_fixture();
    RandPolicy uniform{RandVariant::SeededUniform, 1e-9};
    const TestSequence seq = TestSequence::from_string("1,2,3,5,7");
    st::ConstantSource r1(0.8);    // rand = 0.2
    st::ConstantSource r2(0.6);    // rand = 0.4, doubled
    const double p1 = path_priority(seq, g, uniform, r1);
    const double p2 = path_priority(seq, g, uniform, r2);
    CHECK(p1 == doctest::Approx(2.0 * p2).epsilon(1e-12));
}

TEST_CASE("oracle cost evaluates the printed formula") {
    const StateGraph g = atm_fixture();
    PriorityContext ctx;
    ctx.graph = &g;
    ctx.suite_size = 6;
    ctx.max_priority = 0.8562;

    SUBCASE("suite-constant variant") {
        CHECK(oracle_cost(0.1, ctx) == doctest::Approx(0.5391).epsilon(1e-3));
        CHECK(oracle_cost(0.1, ctx) == doctest::Approx(6.0 / (13.0 * 0.8562)).epsilon(1e-12));
        // identical for every sequence of the suite
        CHECK(oracle_cost(0.9, ctx) == oracle_cost(0.1, ctx));
    }

    SUBCASE("per-path variant") {
        ctx.cost_variant = CostVariant::PerPathPriority;
        CHECK(oracle_cost(0.3901, ctx) == doctest::Approx(1.1832).epsilon(1e-4));
    }

    SUBCASE("identity case") {
        const StateGraph one = StateGraph::create(2, {{1, 2}}, 1, {2});
        PriorityContext tiny;
        tiny.graph = &one;
        tiny.suite_size = 1;
        tiny.max_priority = 1.0;
        CHECK(oracle_cost(1.0, tiny) == doctest::Approx(1.0));
    }

    SUBCASE("non-positive max priority is an internal error") {
        ctx.max_priority = 0.0;
        CHECK_THROWS_AS(oracle_cost(0.1, ctx), ZeroPriority);
    }
}

TEST_CASE("cost homogeneity: scaling priorities by c divides cost by c") {
    const StateGraph g = atm_fixture();
    for (double c : {2.0, 10.0, 0.25, 3.7}) {
        PriorityContext base;
        base.graph = &g;
        base.suite_size = 6;
        base.max_priority = 0.8562;
        PriorityContext scaled = base;
        scaled.max_priority = base.max_priority * c;
        const double f2 = oracle_cost(0.0, base);
        const double f2_scaled = oracle_cost(0.0, scaled);
        CHECK(std::fabs(f2_scaled * c - f2) <= 1e-12 * std::fabs(f2));
    }
}

TEST_CASE("growing the suite never decreases cost at fixed max priority") {
    const StateGraph g = atm_fixture();
    PriorityContext ctx;
    ctx.graph = &g;
    ctx.max_priority = 0.8562;
    double previous = 0.0;
    for (int tc = 1; tc <= 14; ++tc) {
        ctx.suite_size = tc;
        const double cost = oracle_cost(0.0, ctx);
        CHECK(cost > previous);
        previous = cost;
    }
}

TEST_CASE("objective_vector composes the two formulas") {
    const StateGraph g = atm_fixture();
    PriorityContext ctx;
    ctx.graph = &g;
    ctx.suite_size = 6;
    ctx.max_priority = 0.8562;
    st::ScriptedSource no_draws({});
    const TestSequence seq = TestSequence::from_string("1,2,7,8");
    const ObjectiveVector v = objective_vector(seq, ctx, RandPolicy{}, no_draws);
    st::ScriptedSource again({});
    CHECK(v.priority == path_priority(seq, g, RandPolicy{}, again));
    CHECK(v.cost == oracle_cost(v.priority, ctx));
    CHECK(v.priority > 0.0);
    CHECK(v.cost > 0.0);
}

TEST_CASE("evaluate_suite computes suite-constant costs and positive vectors") {
    const StateGraph g = atm_fixture();
    PathSuite suite;
    for (const char* p : {"1,2,7,8", "1,2,3,7,8", "1,2,3,5,7", "1,2,3,4,7", "1,2,3,5,6,7",
                          "1,2,4,8"}) {
        suite.push_back(TestSequence::from_string(p));
    }
    Mt19937Source rng(5);
    const auto vectors =
        evaluate_suite(suite, g, RandPolicy{}, CostVariant::MaxPriority, rng);
    REQUIRE(vectors.size() == 6);
    for (const ObjectiveVector& v : vectors) {
        CHECK(v.priority > 0.0);
        CHECK(v.cost > 0.0);
        CHECK(std::isfinite(v.priority));
        CHECK(v.cost == doctest::Approx(vectors.front().cost));
    }
}

TEST_CASE("paper formula evaluation is bit-exact reproducible") {
    const StateGraph g = atm_fixture();
    PathSuite suite;
    suite.push_back(TestSequence::from_string("1,2,3,5,7"));
    suite.push_back(TestSequence::from_string("1,2,4,8"));

    Mt19937Source rng_a(99), rng_b(99);
    const auto a = evaluate_suite(suite, g, RandPolicy{}, CostVariant::MaxPriority, rng_a);
    const auto b = evaluate_suite(suite, g, RandPolicy{}, CostVariant::MaxPriority, rng_b);
    CHECK(a == b);

    RandPolicy uniform{RandVariant::SeededUniform, 0.01};
    Mt19937Source rng_c(99), rng_d(99);
    const auto c = evaluate_suite(suite, g, uniform, CostVariant::PerPathPriority, rng_c);
    const auto d = evaluate_suite(suite, g, uniform, CostVariant::PerPathPriority, rng_d);
    CHECK(c == d);
}
