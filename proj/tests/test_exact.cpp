#include "doctest.h"
#include "nfpt/exact.hpp"
#include "nfpt/gen.hpp"
#include "nfpt/rng.hpp"

using namespace nfpt;

TEST_SUITE_BEGIN("exact");

namespace {

Graph petersen() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);          // outer cycle
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        edges.emplace_back(i, 5 + i);                // spokes
    }
    return {10, edges};
}

}  // namespace

TEST_CASE("known optima") {
    const Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(brute_force(c5, ProblemKind::Mis).value == 2);
    CHECK(brute_force(petersen(), ProblemKind::Mis).value == 4);

    std::vector<std::pair<int, int>> k4e;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4e.emplace_back(u, v);
    CHECK(brute_force(Graph(4, k4e), ProblemKind::MaxCut).value == 4);
    CHECK(brute_force(Graph(4, k4e), ProblemKind::Mvc).value == 3);
}

TEST_CASE("witnesses are feasible and achieve the value") {
    Rng rng(1);
    for (int i = 0; i < 25; ++i) {
        const int n = 2 + (int)rng.uniform_u64(11);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bernoulli(0.4)) edges.emplace_back(u, v);
        const Graph g(n, edges);
        for (const auto kind : {ProblemKind::Mis, ProblemKind::Mvc, ProblemKind::MaxCut}) {
            const DPOutcome out = brute_force(g, kind);
            REQUIRE(is_feasible(g, kind, out.assignment));
            REQUIRE(evaluate(g, kind, out.assignment) == out.value);
        }
    }
}

TEST_CASE("refuses beyond 26 vertices") {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < 27; ++v) edges.emplace_back(0, v);
    CHECK_THROWS_AS(brute_force(Graph(27, edges), ProblemKind::Mis), std::invalid_argument);
}

TEST_CASE("reference_opt routes") {
    const Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    const Reference small = reference_opt(c5, ProblemKind::Mis);
    CHECK(small.exact);
    CHECK(small.value == 2);

    // n=40 ring: too big for brute force, narrow enough for the full DP
    std::vector<std::pair<int, int>> ring;
    for (int v = 0; v < 40; ++v) ring.emplace_back(v, (v + 1) % 40);
    const Reference dp = reference_opt(Graph(40, ring), ProblemKind::Mis);
    CHECK(dp.exact);
    CHECK(dp.value == 20);

    // forced fallback: max_width 0 rules the DP route out
    const Reference fallback = reference_opt(Graph(40, ring), ProblemKind::Mis, 0, 17);
    CHECK(!fallback.exact);
    CHECK(fallback.value == 17);
    CHECK_THROWS_AS(reference_opt(Graph(40, ring), ProblemKind::Mis, 0), std::invalid_argument);
}

TEST_SUITE_END();
