#include "doctest.h"
#include "nfpt/exact.hpp"
#include "nfpt/gen.hpp"
#include "nfpt/meta.hpp"
#include "nfpt/rng.hpp"
#include "nfpt/tree_decomp.hpp"

#include <algorithm>

using namespace nfpt;

TEST_SUITE_BEGIN("meta");

namespace {

Graph random_graph(uint64_t seed, int n_lo, int n_hi, double p) {
    Rng rng(seed);
    const int n = rng.uniform_int(n_lo, n_hi);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
    return normalize(n, edges).graph;
}

Modulator make_mod(const Graph& g, int eta) {
    return modulator_exact(prune_bags(min_degree_td(g)), eta).modulator;
}

// always returns the same completion; undecided vertices filled by one
// deterministic greedy pass
class FixedSeedOracle final : public Oracle {
public:
    OracleResult produce(const OracleCall& call) override {
        OracleCall pinned = call;
        pinned.seed = 424242;
        return oracle_random_greedy(pinned);
    }
    std::string name() const override { return "fixed"; }
};

// alternates between two preset completions on fresh calls; extends partials
// greedily so committed states are honored
class AlternatingOracle final : public Oracle {
public:
    AlternatingOracle(Assignment a, Assignment b) : a_(std::move(a)), b_(std::move(b)) {}
    OracleResult produce(const OracleCall& call) override {
        const bool fresh = std::all_of(call.partial.begin(), call.partial.end(), [](VertexState s) {
            return s == VertexState::Undecided;
        });
        if (fresh) return {(calls_++ % 2 == 0) ? a_ : b_};
        OracleCall pinned = call;
        pinned.seed = 7;
        return oracle_random_greedy(pinned);
    }
    std::string name() const override { return "alternating"; }

private:
    Assignment a_, b_;
    int calls_ = 0;
};

const Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});

}  // namespace

TEST_CASE("icl with a deterministic oracle commits everything in one round") {
    const Graph g = random_graph(42, 8, 14, 0.3);
    const Modulator mod = make_mod(g, 2);
    FixedSeedOracle oracle;
    IclParams params{4, 2, 16};
    const IclOutcome out = icl_run(oracle, g, ProblemKind::Mis, mod, params, 9);
    CHECK(out.rounds == 1);
    CHECK(!out.forced);
    CHECK(is_complete(out.committed));  // unanimous votes commit every vertex
    const Assignment expect =
        oracle.produce(OracleCall{&g, ProblemKind::Mis, Assignment(g.num_vertices()), 0}).full;
    for (size_t i = 0; i < mod.vertices.size(); ++i)
        CHECK(out.advice.take[i] == (expect[mod.vertices[i]] == VertexState::In ? 1 : 0));
}

TEST_CASE("unreachable threshold falls back at max_rounds") {
    const Graph g = random_graph(43, 8, 12, 0.3);
    const Modulator mod = make_mod(g, 1);
    REQUIRE(!mod.vertices.empty());
    RandomGreedyOracle oracle;
    IclParams params{5, 5, 4};  // votes can never exceed k
    const IclOutcome out = icl_run(oracle, g, ProblemKind::Mis, mod, params, 11);
    CHECK(out.rounds == 4);
    CHECK(out.forced);
    CHECK(out.advice.size() == mod.vertices.size());
    CHECK(is_feasible(g, ProblemKind::Mis, out.completion));
}

TEST_CASE("C5 voting example: vertex 0 unanimous, middle vertices split") {
    Assignment s02(5, VertexState::Out), s03(5, VertexState::Out);
    s02[0] = s02[2] = VertexState::In;
    s03[0] = s03[3] = VertexState::In;
    AlternatingOracle oracle(s02, s03);
    Modulator mod;
    mod.eta = 1;
    mod.vertices = {0};
    IclParams params{4, 2, 16};
    const IclOutcome out = icl_run(oracle, c5, ProblemKind::Mis, mod, params, 1);
    CHECK(out.committed[0] == VertexState::In);  // v_0 = 4 > kappa
    CHECK(out.rounds == 1);                      // the whole modulator is {0}
    CHECK(out.advice.take == std::vector<uint8_t>{1});
    // split votes (2 vs 2) never pass a kappa=2 threshold
    CHECK(out.committed[2] == VertexState::Undecided);
    CHECK(out.committed[3] == VertexState::Undecided);
}

TEST_CASE("icl commits only grow and stay MIS-consistent") {
    // instrumented run: re-run icl with increasing max_rounds and check the
    // committed set is monotone between the prefixes
    for (int i = 0; i < 25; ++i) {
        const Graph g = random_graph(mix_seed(800, i), 8, 18, 0.3);
        const Modulator mod = make_mod(g, 1);
        RandomGreedyOracle oracle;
        Assignment previous;
        for (int rounds = 1; rounds <= 4; ++rounds) {
            IclParams params{6, 4, rounds};
            const IclOutcome out = icl_run(oracle, g, ProblemKind::Mis, mod, params, mix_seed(801, i));
            Assignment committed = out.committed;
            if (out.forced) continue;  // forced fill-ins are not vote commits
            if (!previous.empty()) {
                for (size_t v = 0; v < previous.size(); ++v)
                    if (previous[v] != VertexState::Undecided)
                        REQUIRE(previous[v] == committed[v]);
            }
            previous = committed;
            // MIS soundness: no committed In pair across an edge
            auto us = g.edge_us();
            auto vs = g.edge_vs();
            for (size_t e = 0; e < us.size(); ++e)
                REQUIRE(!(committed[us[e]] == VertexState::In &&
                          committed[vs[e]] == VertexState::In));
        }
    }
}

TEST_CASE("icl determinism") {
    const Graph g = random_graph(901, 10, 16, 0.3);
    const Modulator mod = make_mod(g, 1);
    RandomGreedyOracle oracle;
    IclParams params{6, 3, 8};
    const IclOutcome a = icl_run(oracle, g, ProblemKind::Mis, mod, params, 77);
    const IclOutcome b = icl_run(oracle, g, ProblemKind::Mis, mod, params, 77);
    CHECK(a.committed == b.committed);
    CHECK(a.completion == b.completion);
    CHECK(a.advice.take == b.advice.take);
}

TEST_CASE("rd_revert reproduces the worked reversal example") {
    // vertex 2 is exclusively adjacent to vertices 0 and 3
    const Graph g(5, {{0, 2}, {2, 3}});
    const Assignment state = assignment_from_string("01101");
    const std::vector<int> reverted{2};
    const Assignment seeded = rd_revert(g, ProblemKind::Mis, state, reverted);
    CHECK(to_string(seeded) == "?1??1");
}

TEST_CASE("rd_revert: MVC resets neighbors of reverted Out vertices, MaxCut resets none") {
    const Graph g(5, {{0, 2}, {2, 3}});
    const Assignment state = assignment_from_string("10010");

    const Assignment mvc = rd_revert(g, ProblemKind::Mvc, state, std::vector<int>{2});
    CHECK(to_string(mvc) == "?00?0".substr(0, 5));  // neighbors 0 and 3 reopen

    const Assignment mc = rd_revert(g, ProblemKind::MaxCut, state, std::vector<int>{2});
    CHECK(to_string(mc) == "10?10");
}

TEST_CASE("rho=0 keeps a deterministic oracle glued to its first trajectory") {
    const Graph g = random_graph(902, 10, 16, 0.3);
    const Modulator mod = make_mod(g, 1);
    FixedSeedOracle oracle;
    RdParams params{0.0, 5};
    const auto rounds = rd_run(oracle, g, ProblemKind::Mis, mod, params, 5);
    REQUIRE(rounds.size() == 5);
    for (const auto& round : rounds) CHECK(round.trajectory == rounds[0].trajectory);
}

TEST_CASE("rho=1 reverts everything") {
    const Graph g = random_graph(903, 8, 12, 0.3);
    std::vector<int> all(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
    OracleCall call{&g, ProblemKind::Mis, Assignment(g.num_vertices()), 3};
    const Assignment complete = oracle_random_greedy(call).full;
    const Assignment seeded = rd_revert(g, ProblemKind::Mis, complete, all);
    CHECK(std::all_of(seeded.begin(), seeded.end(),
                      [](VertexState s) { return s == VertexState::Undecided; }));
}

TEST_CASE("rd seed states stay extendable: trajectories are always feasible") {
    for (int i = 0; i < 30; ++i) {
        const Graph g = random_graph(mix_seed(904, i), 8, 18, 0.35);
        const Modulator mod = make_mod(g, 1);
        RandomGreedyOracle oracle;
        for (const auto kind : {ProblemKind::Mis, ProblemKind::Mvc, ProblemKind::MaxCut}) {
            RdParams params{0.3, 6};
            const auto rounds = rd_run(oracle, g, kind, mod, params, mix_seed(905, i));
            REQUIRE(rounds.size() == 6);
            for (const auto& round : rounds) {
                REQUIRE(is_complete(round.trajectory));
                REQUIRE(is_feasible(g, kind, round.trajectory));
            }
        }
    }
}

TEST_CASE("rd determinism") {
    const Graph g = random_graph(906, 10, 16, 0.3);
    const Modulator mod = make_mod(g, 1);
    RandomGreedyOracle oracle;
    RdParams params{0.25, 8};
    const auto a = rd_run(oracle, g, ProblemKind::Mis, mod, params, 13);
    const auto b = rd_run(oracle, g, ProblemKind::Mis, mod, params, 13);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].trajectory == b[i].trajectory);
}

TEST_SUITE_END();
