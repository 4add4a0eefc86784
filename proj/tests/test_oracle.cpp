#include "doctest.h"
#include "nfpt/exact.hpp"
#include "nfpt/gen.hpp"
#include "nfpt/oracle.hpp"
#include "nfpt/rng.hpp"

#include <algorithm>

using namespace nfpt;

TEST_SUITE_BEGIN("oracle");

namespace {

#ifdef NFPT_STUB_ORACLE_PATH
const std::string kStub = NFPT_STUB_ORACLE_PATH;
#else
const std::string kStub;
#endif

Graph random_graph(uint64_t seed, int n_lo, int n_hi, double p) {
    Rng rng(seed);
    const int n = rng.uniform_int(n_lo, n_hi);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
    return normalize(n, edges).graph;
}

const Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});

}  // namespace

TEST_CASE("greedy results are feasible and complete across kinds") {
    for (int i = 0; i < 350; ++i) {
        const Graph g = random_graph(mix_seed(701, i), 3, 20, 0.3);
        for (const auto kind : {ProblemKind::Mis, ProblemKind::Mvc, ProblemKind::MaxCut}) {
            OracleCall call{&g, kind, Assignment(g.num_vertices()), mix_seed(702, i)};
            const OracleResult res = oracle_random_greedy(call);
            REQUIRE(is_complete(res.full));
            REQUIRE(is_feasible(g, kind, res.full));
        }
    }
}

TEST_CASE("greedy on C5 always lands a maximal independent set of size 2") {
    for (int seed = 0; seed < 50; ++seed) {
        OracleCall call{&c5, ProblemKind::Mis, Assignment(5), (uint64_t)seed};
        CHECK(evaluate(c5, ProblemKind::Mis, oracle_random_greedy(call).full) == 2);
    }
}

TEST_CASE("decided entries are never overwritten") {
    for (int i = 0; i < 100; ++i) {
        const Graph g = random_graph(mix_seed(703, i), 4, 16, 0.3);
        Rng rng(mix_seed(704, i));
        for (const auto kind : {ProblemKind::Mis, ProblemKind::Mvc, ProblemKind::MaxCut}) {
            // build a feasibility-consistent partial from a feasible completion
            OracleCall seed_call{&g, kind, Assignment(g.num_vertices()), rng.next_u64()};
            Assignment partial = oracle_random_greedy(seed_call).full;
            for (auto& s : partial)
                if (rng.bernoulli(0.6)) s = VertexState::Undecided;
            OracleCall call{&g, kind, partial, rng.next_u64()};
            const OracleResult res = oracle_random_greedy(call);
            REQUIRE(is_feasible(g, kind, res.full));
            for (int v = 0; v < g.num_vertices(); ++v)
                if (partial[v] != VertexState::Undecided) REQUIRE(res.full[v] == partial[v]);
        }
    }
}

TEST_CASE("pinned vertex forces its neighbor out (P3, MIS)") {
    const Graph p3(3, {{0, 1}, {1, 2}});
    Assignment partial(3, VertexState::Undecided);
    partial[0] = VertexState::In;
    for (int seed = 0; seed < 20; ++seed) {
        OracleCall call{&p3, ProblemKind::Mis, partial, (uint64_t)seed};
        CHECK(oracle_random_greedy(call).full[1] == VertexState::Out);
    }
}

TEST_CASE("same call, same seed, same result") {
    const Graph g = random_graph(7, 10, 20, 0.3);
    OracleCall call{&g, ProblemKind::Mis, Assignment(g.num_vertices()), 99};
    CHECK(oracle_random_greedy(call).full == oracle_random_greedy(call).full);
}

TEST_CASE("perfect oracle matches brute force") {
    for (int i = 0; i < 15; ++i) {
        const Graph g = random_graph(mix_seed(705, i), 4, 12, 0.3);
        PerfectOracle oracle;
        for (const auto kind : {ProblemKind::Mis, ProblemKind::Mvc, ProblemKind::MaxCut}) {
            OracleCall call{&g, kind, Assignment(g.num_vertices()), 1};
            CHECK(evaluate(g, kind, oracle.produce(call).full) == brute_force(g, kind).value);
        }
    }
}

TEST_CASE("advice_from restrictions") {
    Modulator empty;
    CHECK(advice_from(Assignment(5, VertexState::Out), empty).size() == 0);

    Modulator all;
    all.vertices = {0, 1, 2, 3, 4};
    Assignment a(5, VertexState::Out);
    a[0] = a[2] = VertexState::In;
    const AdviceString full = advice_from(a, all);
    CHECK(full.take == std::vector<uint8_t>{1, 0, 1, 0, 0});

    Modulator pair;
    pair.vertices = {0, 1};
    const AdviceString restricted = advice_from(a, pair);
    CHECK(restricted.take == std::vector<uint8_t>{1, 0});
}

TEST_CASE("external stub: valid modes accepted, broken modes rejected") {
    REQUIRE(!kStub.empty());

    SUBCASE("all-out reply accepted for MIS") {
        ExternalOracle oracle(kStub + " --mode=allout", 10.0);
        OracleCall call{&c5, ProblemKind::Mis, Assignment(5), 1};
        const OracleResult res = oracle.produce(call);
        CHECK(evaluate(c5, ProblemKind::Mis, res.full) == 0);
    }
    SUBCASE("greedy mode is feasible and serves repeated requests") {
        ExternalOracle oracle(kStub + " --mode=ok", 10.0);
        for (int i = 0; i < 5; ++i) {
            OracleCall call{&c5, ProblemKind::Mis, Assignment(5), (uint64_t)i};
            CHECK(is_feasible(c5, ProblemKind::Mis, oracle.produce(call).full));
        }
    }
    SUBCASE("infeasible reply rejected") {
        ExternalOracle oracle(kStub + " --mode=infeasible", 10.0);
        OracleCall call{&c5, ProblemKind::Mis, Assignment(5), 1};
        CHECK_THROWS_AS(oracle.produce(call), OracleError);
    }
    SUBCASE("incomplete reply rejected") {
        ExternalOracle oracle(kStub + " --mode=incomplete", 10.0);
        OracleCall call{&c5, ProblemKind::Mis, Assignment(5), 1};
        CHECK_THROWS_AS(oracle.produce(call), OracleError);
    }
    SUBCASE("misframed reply rejected") {
        ExternalOracle oracle(kStub + " --mode=badframe", 10.0);
        OracleCall call{&c5, ProblemKind::Mis, Assignment(5), 1};
        CHECK_THROWS_AS(oracle.produce(call), OracleError);
    }
    SUBCASE("wrong handshake version rejected") {
        ExternalOracle oracle(kStub + " --mode=badversion", 10.0);
        OracleCall call{&c5, ProblemKind::Mis, Assignment(5), 1};
        CHECK_THROWS_AS(oracle.produce(call), OracleError);
    }
}

TEST_CASE("make_oracle selectors") {
    CHECK(make_oracle("greedy")->name() == "greedy");
    CHECK(make_oracle("perfect")->name() == "perfect");
    CHECK_THROWS_AS(make_oracle("nope"), OracleError);
}

TEST_SUITE_END();
