#include "doctest.h"
#include "nfpt/graph.hpp"
#include "nfpt/rng.hpp"

#include <sstream>

using namespace nfpt;

TEST_SUITE_BEGIN("graph");

namespace {

Graph from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

Assignment pick(int n, std::initializer_list<int> in_set) {
    Assignment a(n, VertexState::Out);
    for (int v : in_set) a[v] = VertexState::In;
    return a;
}

const Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});

}  // namespace

TEST_CASE("parse: path on three vertices") {
    const Graph g = from_text("0 1\n1 2\n");
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
}

TEST_CASE("parse: self-loop only collapses to the empty graph") {
    const Graph g = from_text("0 0\n");
    CHECK(g.num_vertices() == 0);
    CHECK(g.num_edges() == 0);
}

TEST_CASE("parse: sparse ids are relabeled preserving adjacency") {
    const Graph g = from_text("0 2\n2 5\n");
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    // 0->0, 2->1, 5->2: the shared endpoint keeps degree 2
    CHECK(g.degree(1) == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK(!g.has_edge(0, 2));
}

TEST_CASE("parse: comments and malformed lines") {
    CHECK(from_text("# header\n0 1\n").num_edges() == 1);
    std::istringstream bad("0 1\nnope\n");
    CHECK_THROWS_AS(parse_edge_list(bad), ParseError);
}

TEST_CASE("normalize: triangle plus isolated vertex") {
    const std::vector<std::pair<int, int>> raw{{0, 1}, {1, 2}, {0, 2}};
    const auto res = normalize(4, raw);  // vertex 3 isolated
    CHECK(res.graph.num_vertices() == 3);
    CHECK(res.graph.num_edges() == 3);
    CHECK(res.old_to_new[3] == -1);
}

TEST_CASE("normalize: duplicate edges collapse") {
    const std::vector<std::pair<int, int>> raw{{0, 1}, {1, 0}, {0, 2}, {0, 3}, {1, 2}, {1, 3},
                                               {2, 3}};
    const auto res = normalize(4, raw);
    CHECK(res.graph.num_edges() == 6);  // K4
}

TEST_CASE("normalize: star with a self-loop on the center") {
    std::vector<std::pair<int, int>> raw{{0, 0}};
    for (int leaf = 1; leaf <= 5; ++leaf) raw.emplace_back(0, leaf);
    const auto res = normalize(6, raw);
    CHECK(res.graph.num_vertices() == 6);
    CHECK(res.graph.num_edges() == 5);
}

TEST_CASE("edge list round-trips through text") {
    std::ostringstream out;
    write_edge_list(out, k4);
    CHECK(from_text(out.str()) == k4);
}

TEST_CASE("evaluate: spec examples") {
    CHECK(evaluate(c5, ProblemKind::Mis, pick(5, {0, 2})) == 2);
    CHECK(evaluate(c5, ProblemKind::MaxCut, pick(5, {0, 2})) == 4);
    CHECK(evaluate(k4, ProblemKind::Mvc, pick(4, {0, 1, 2})) == 3);
}

TEST_CASE("evaluate rejects incomplete assignments") {
    Assignment a(5, VertexState::Out);
    a[3] = VertexState::Undecided;
    CHECK_THROWS_AS(evaluate(c5, ProblemKind::Mis, a), std::invalid_argument);
}

TEST_CASE("is_feasible: spec examples") {
    const Graph p3(3, {{0, 1}, {1, 2}});
    CHECK(is_feasible(p3, ProblemKind::Mis, pick(3, {0, 2})));
    CHECK(!is_feasible(p3, ProblemKind::Mis, pick(3, {0, 1})));
    CHECK(is_feasible(p3, ProblemKind::Mvc, pick(3, {1})));
    CHECK(!is_feasible(p3, ProblemKind::Mvc, pick(3, {0})));
    CHECK(is_feasible(p3, ProblemKind::MaxCut, pick(3, {})));
}

TEST_CASE("maxcut identity: cut = m - inside(S) - inside(V\\S)") {
    Rng rng(99);
    for (int round = 0; round < 50; ++round) {
        const int n = 3 + (int)rng.uniform_u64(12);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bernoulli(0.4)) edges.emplace_back(u, v);
        const Graph g(n, edges);
        Assignment a(n);
        for (int v = 0; v < n; ++v)
            a[v] = rng.bernoulli(0.5) ? VertexState::In : VertexState::Out;
        long long inside_s = 0, inside_rest = 0;
        for (auto [u, v] : edges) {
            if (a[u] == VertexState::In && a[v] == VertexState::In) ++inside_s;
            if (a[u] == VertexState::Out && a[v] == VertexState::Out) ++inside_rest;
        }
        CHECK(evaluate(g, ProblemKind::MaxCut, a) ==
              (long long)edges.size() - inside_s - inside_rest);
    }
}

TEST_CASE("assignment strings round-trip") {
    const Assignment a = assignment_from_string("?01?1");
    CHECK(to_string(a) == "?01?1");
    CHECK(!is_complete(a));
    CHECK(is_complete(assignment_from_string("0011")));
    CHECK_THROWS_AS(assignment_from_string("01x"), ParseError);
}

TEST_SUITE_END();
