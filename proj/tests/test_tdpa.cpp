#include "doctest.h"
#include "nfpt/exact.hpp"
#include "nfpt/gen.hpp"
#include "nfpt/oracle.hpp"
#include "nfpt/rng.hpp"
#include "nfpt/tdpa.hpp"

#include <algorithm>

using namespace nfpt;

TEST_SUITE_BEGIN("tdpa");

namespace {

constexpr ProblemKind kAllKinds[] = {ProblemKind::Mis, ProblemKind::Mvc, ProblemKind::MaxCut};

Graph random_graph(uint64_t seed, int n_lo, int n_hi, double p) {
    Rng rng(seed);
    const int n = rng.uniform_int(n_lo, n_hi);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
    return normalize(n, edges).graph;
}

struct Pipeline {
    RootedTd rooted;
    Modulator mod;
};

Pipeline prepare(const Graph& g, int eta) {
    const TreeDecomposition td = prune_bags(min_degree_td(g));
    Pipeline p;
    p.rooted = root_and_order(td);
    p.mod = modulator_exact(td, eta).modulator;
    return p;
}

DPOutcome solve_plain(const Graph& g, ProblemKind kind) {
    const RootedTd rooted = root_and_order(prune_bags(min_degree_td(g)));
    return tdpa_solve(g, rooted, Modulator{}, AdviceString{}, kind);
}

}  // namespace

TEST_CASE("P4 independent set: alternating vertices") {
    const Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});
    const DPOutcome out = solve_plain(p4, ProblemKind::Mis);
    CHECK(out.value == 2);
    CHECK(is_feasible(p4, ProblemKind::Mis, out.assignment));
    CHECK(evaluate(p4, ProblemKind::Mis, out.assignment) == 2);
}

TEST_CASE("tiny classics") {
    const Graph p2(2, {{0, 1}});
    const DPOutcome cover = solve_plain(p2, ProblemKind::Mvc);
    CHECK(cover.value == 1);
    CHECK(std::count(cover.assignment.begin(), cover.assignment.end(), VertexState::In) == 1);

    const Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    const DPOutcome cut = solve_plain(k3, ProblemKind::MaxCut);
    CHECK(cut.value == 2);
    CHECK(evaluate(k3, ProblemKind::MaxCut, cut.assignment) == 2);
}

TEST_CASE("empty modulator equals exhaustive search (mixed corpus)") {
    for (int i = 0; i < 120; ++i) {
        const Graph g = random_graph(mix_seed(101, i), 2, 14, 0.3);
        for (const ProblemKind kind : kAllKinds) {
            const DPOutcome dp = solve_plain(g, kind);
            const DPOutcome ref = brute_force(g, kind);
            REQUIRE(dp.value == ref.value);
            REQUIRE(is_feasible(g, kind, dp.assignment));
            REQUIRE(evaluate(g, kind, dp.assignment) == dp.value);
        }
    }
}

TEST_CASE("C5 with vertex 0 pinned by advice") {
    const Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    const RootedTd rooted = root_and_order(prune_bags(min_degree_td(c5)));
    Modulator mod;
    mod.eta = 1;
    mod.vertices = {0};

    AdviceString take_zero{{0}, {1}};
    const DPOutcome with = tdpa_solve(c5, rooted, mod, take_zero, ProblemKind::Mis);
    CHECK(with.value == 2);
    CHECK(with.assignment[0] == VertexState::In);

    AdviceString skip_zero{{0}, {0}};
    const DPOutcome without = tdpa_solve(c5, rooted, mod, skip_zero, ProblemKind::Mis);
    CHECK(without.value == 2);
    CHECK(without.assignment[0] == VertexState::Out);
}

TEST_CASE("advice selecting adjacent vertices is rejected for MIS") {
    const Graph p3(3, {{0, 1}, {1, 2}});
    const RootedTd rooted = root_and_order(prune_bags(min_degree_td(p3)));
    Modulator mod;
    mod.eta = 0;
    mod.vertices = {0, 1};
    const AdviceString bad{{0, 1}, {1, 1}};
    CHECK_THROWS_AS(tdpa_solve(p3, rooted, mod, bad, ProblemKind::Mis), AdviceInfeasible);
}

TEST_CASE("MVC advice leaving an edge uncoverable surfaces as Infeasible") {
    const Graph p2(2, {{0, 1}});
    const RootedTd rooted = root_and_order(prune_bags(min_degree_td(p2)));
    Modulator mod;
    mod.eta = 0;
    mod.vertices = {0, 1};
    const AdviceString bad{{0, 1}, {0, 0}};
    CHECK_THROWS_AS(tdpa_solve(p2, rooted, mod, bad, ProblemKind::Mvc), Infeasible);
}

TEST_CASE("advice domain must match the modulator") {
    const Graph p2(2, {{0, 1}});
    const RootedTd rooted = root_and_order(prune_bags(min_degree_td(p2)));
    Modulator mod;
    mod.eta = 0;
    mod.vertices = {0};
    CHECK_THROWS_AS(tdpa_solve(p2, rooted, mod, AdviceString{}, ProblemKind::Mis),
                    std::invalid_argument);
}

TEST_CASE("enumerate_bag_states: pair bag under MIS") {
    const Graph p2(2, {{0, 1}});
    const std::vector<int> bag{0, 1};

    const auto open = enumerate_bag_states(p2, bag, AdviceString{}, ProblemKind::Mis);
    CHECK(open.size() == 3);  // both out, 0 in, 1 in

    const AdviceString zero_in{{0}, {1}};
    const auto pinned = enumerate_bag_states(p2, bag, zero_in, ProblemKind::Mis);
    REQUIRE(pinned.size() == 1);
    CHECK(pinned[0][0] == VertexState::In);
    CHECK(pinned[0][1] == VertexState::Out);
}

TEST_CASE("enumerate_bag_states: 2^(eta+1) candidates with the modulator fixed") {
    // bag of size eta+1+k with k advice vertices enumerates 2^(eta+1) states
    const int eta = 3;
    const int k = 3;
    const int size = eta + 1 + k;
    std::vector<int> bag(size);
    for (int i = 0; i < size; ++i) bag[i] = i;
    const Graph loose(size, {{0, 1}});  // one edge, far from binding
    AdviceString advice;
    for (int i = 0; i < k; ++i) {
        advice.vertices.push_back(eta + 1 + i);
        advice.take.push_back(0);
    }
    const auto states = enumerate_bag_states(loose, bag, advice, ProblemKind::MaxCut);
    CHECK(states.size() == 1u << (eta + 1));
}

TEST_CASE("work bound: per-bag enumerated states never exceed 2^(eta+1)") {
    for (int i = 0; i < 30; ++i) {
        const Graph g = random_graph(mix_seed(210, i), 10, 28, 0.3);
        if (g.num_vertices() == 0) continue;
        const int eta = 3;
        const Pipeline p = prepare(g, eta);
        Rng rng(mix_seed(211, i));
        AdviceString advice;
        advice.vertices = p.mod.vertices;
        for (size_t j = 0; j < p.mod.vertices.size(); ++j)
            advice.take.push_back(0);  // all-out advice is MIS-safe
        const DPOutcome out = tdpa_solve(g, p.rooted, p.mod, advice, ProblemKind::Mis);
        REQUIRE(out.stats.max_bag_states <= (1ll << (eta + 1)));
        REQUIRE(out.stats.enumerated_states <= (long long)out.stats.bags * (1ll << (eta + 1)));
    }
}

TEST_CASE("perfect advice recovers the global optimum (eta=3 corpus)") {
    for (int i = 0; i < 60; ++i) {
        const Graph g = random_graph(mix_seed(301, i), 4, 14, 0.35);
        if (g.num_vertices() == 0) continue;
        const Pipeline p = prepare(g, 3);
        for (const ProblemKind kind : kAllKinds) {
            const DPOutcome best = brute_force(g, kind);
            const AdviceString advice = advice_from(best.assignment, p.mod);
            const DPOutcome out = tdpa_solve(g, p.rooted, p.mod, advice, kind);
            REQUIRE(out.value == best.value);
        }
    }
}

TEST_CASE("advice from any feasible trajectory never hurts") {
    for (int i = 0; i < 40; ++i) {
        const Graph g = random_graph(mix_seed(401, i), 4, 14, 0.35);
        if (g.num_vertices() == 0) continue;
        const Pipeline p = prepare(g, 3);
        for (const ProblemKind kind : kAllKinds) {
            for (int t = 0; t < 5; ++t) {
                OracleCall call{&g, kind, Assignment(g.num_vertices()), mix_seed(402, i, t)};
                const Assignment traj = oracle_random_greedy(call).full;
                REQUIRE(is_feasible(g, kind, traj));
                const long long oracle_value = evaluate(g, kind, traj);
                const DPOutcome out =
                    tdpa_solve(g, p.rooted, p.mod, advice_from(traj, p.mod), kind);
                if (maximizing(kind)) REQUIRE(out.value >= oracle_value);
                else REQUIRE(out.value <= oracle_value);
            }
        }
    }
}

TEST_CASE("MVC complements MIS exactly") {
    for (int i = 0; i < 40; ++i) {
        const Graph g = random_graph(mix_seed(501, i), 3, 14, 0.3);
        if (g.num_vertices() == 0) continue;
        const long long mis = solve_plain(g, ProblemKind::Mis).value;
        const long long mvc = solve_plain(g, ProblemKind::Mvc).value;
        REQUIRE(mis + mvc == g.num_vertices());
    }
}

TEST_CASE("reconstruction is consistent with the advice") {
    for (int i = 0; i < 30; ++i) {
        const Graph g = random_graph(mix_seed(601, i), 6, 16, 0.3);
        if (g.num_vertices() == 0) continue;
        const Pipeline p = prepare(g, 2);
        OracleCall call{&g, ProblemKind::Mis, Assignment(g.num_vertices()), mix_seed(602, i)};
        const AdviceString advice = advice_from(oracle_random_greedy(call).full, p.mod);
        const DPOutcome out = tdpa_solve(g, p.rooted, p.mod, advice, ProblemKind::Mis);
        REQUIRE(is_complete(out.assignment));
        REQUIRE(evaluate(g, ProblemKind::Mis, out.assignment) == out.value);
        REQUIRE(is_feasible(g, ProblemKind::Mis, out.assignment));
        for (size_t j = 0; j < advice.vertices.size(); ++j)
            REQUIRE(out.assignment[advice.vertices[j]] ==
                    (advice.take[j] ? VertexState::In : VertexState::Out));
    }
}

TEST_SUITE_END();
