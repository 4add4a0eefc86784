#include "nfpt/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "nfpt/kernels.hpp"

namespace nfpt {

const char* problem_name(ProblemKind k) {
    switch (k) {
        case ProblemKind::Mis: return "mis";
        case ProblemKind::Mvc: return "mvc";
        case ProblemKind::MaxCut: return "maxcut";
    }
    return "?";
}

std::optional<ProblemKind> parse_problem(std::string_view s) {
    if (s == "mis") return ProblemKind::Mis;
    if (s == "mvc") return ProblemKind::Mvc;
    if (s == "maxcut") return ProblemKind::MaxCut;
    return std::nullopt;
}

bool is_complete(const Assignment& a) {
    return std::none_of(a.begin(), a.end(),
                        [](VertexState s) { return s == VertexState::Undecided; });
}

std::string to_string(const Assignment& a) {
    std::string s(a.size(), '?');
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == VertexState::Out) s[i] = '0';
        else if (a[i] == VertexState::In) s[i] = '1';
    }
    return s;
}

Assignment assignment_from_string(std::string_view s) {
    Assignment a(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        switch (s[i]) {
            case '?': a[i] = VertexState::Undecided; break;
            case '0': a[i] = VertexState::Out; break;
            case '1': a[i] = VertexState::In; break;
            default: throw ParseError("bad assignment character");
        }
    }
    return a;
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    edge_u_.reserve(edges.size());
    edge_v_.reserve(edges.size());
    std::vector<int> deg(n, 0);
    for (auto [u, v] : edges) {
        edge_u_.push_back((uint32_t)u);
        edge_v_.push_back((uint32_t)v);
        ++deg[u];
        ++deg[v];
    }
    adj_offset_.assign(n + 1, 0);
    for (int u = 0; u < n; ++u) adj_offset_[u + 1] = adj_offset_[u] + deg[u];
    adj_.resize(adj_offset_[n]);
    std::vector<int> fill(adj_offset_.begin(), adj_offset_.end() - 1);
    for (auto [u, v] : edges) {
        adj_[fill[u]++] = v;
        adj_[fill[v]++] = u;
    }
    for (int u = 0; u < n; ++u) {
        auto b = adj_.begin() + adj_offset_[u];
        auto e = adj_.begin() + adj_offset_[u + 1];
        std::sort(b, e);
    }
}

bool Graph::has_edge(int u, int v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

NormalizeResult normalize(int raw_vertex_count, std::span<const std::pair<int, int>> raw_edges) {
    int max_id = raw_vertex_count - 1;
    for (auto [u, v] : raw_edges) max_id = std::max({max_id, u, v});

    std::vector<std::pair<int, int>> edges;
    edges.reserve(raw_edges.size());
    for (auto [u, v] : raw_edges) {
        if (u == v) continue;  // self-loops dropped
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // Vertices with no surviving edge are isolated and dropped.
    std::vector<int> old_to_new(max_id + 1, -1);
    for (auto [u, v] : edges) old_to_new[u] = old_to_new[v] = 0;
    int next = 0;
    for (auto& id : old_to_new)
        if (id == 0) id = next++;

    for (auto& [u, v] : edges) {
        u = old_to_new[u];
        v = old_to_new[v];
    }
    return {Graph(next, std::move(edges)), std::move(old_to_new)};
}

Graph parse_edge_list(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int lineno = 0;
    int max_id = -1;
    while (std::getline(in, line)) {
        ++lineno;
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v) || u < 0 || v < 0 || u > INT32_MAX || v > INT32_MAX)
            throw ParseError("malformed edge at line " + std::to_string(lineno), lineno);
        std::string rest;
        if (ls >> rest)
            throw ParseError("trailing tokens at line " + std::to_string(lineno), lineno);
        edges.emplace_back((int)u, (int)v);
        max_id = std::max({max_id, (int)u, (int)v});
    }
    return normalize(max_id + 1, edges).graph;
}

Graph parse_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    auto us = g.edge_us();
    auto vs = g.edge_vs();
    for (size_t i = 0; i < us.size(); ++i) out << us[i] << ' ' << vs[i] << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_edge_list(out, g);
}

namespace {

std::vector<int32_t> in_flags(const Assignment& a) {
    std::vector<int32_t> s(a.size());
    for (size_t i = 0; i < a.size(); ++i) s[i] = (a[i] == VertexState::In) ? 1 : 0;
    return s;
}

void require_complete(const Graph& g, const Assignment& a) {
    if ((int)a.size() != g.num_vertices())
        throw std::invalid_argument("assignment size mismatch");
    if (!is_complete(a)) throw std::invalid_argument("assignment is incomplete");
}

}  // namespace

long long evaluate(const Graph& g, ProblemKind kind, const Assignment& a) {
    require_complete(g, a);
    if (kind == ProblemKind::MaxCut) {
        auto s = in_flags(a);
        return (long long)kernels::count_edges(g.edge_us(), g.edge_vs(), s,
                                               kernels::EdgePred::Differ);
    }
    long long size = 0;
    for (auto st : a) size += (st == VertexState::In);
    return size;
}

bool is_feasible(const Graph& g, ProblemKind kind, const Assignment& a) {
    require_complete(g, a);
    if (kind == ProblemKind::MaxCut) return true;
    auto s = in_flags(a);
    const auto pred =
        (kind == ProblemKind::Mis) ? kernels::EdgePred::BothIn : kernels::EdgePred::NeitherIn;
    return kernels::count_edges(g.edge_us(), g.edge_vs(), s, pred) == 0;
}

}  // namespace nfpt
