#include "nfpt/gen.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "nfpt/rng.hpp"

namespace nfpt {

const char* family_name(GraphFamily f) {
    switch (f) {
        case GraphFamily::Er: return "er";
        case GraphFamily::Ba: return "ba";
        case GraphFamily::Ws: return "ws";
        case GraphFamily::Rr: return "rr";
        case GraphFamily::Hk: return "hk";
    }
    return "?";
}

std::optional<GraphFamily> parse_family(std::string_view s) {
    if (s == "er") return GraphFamily::Er;
    if (s == "ba") return GraphFamily::Ba;
    if (s == "ws") return GraphFamily::Ws;
    if (s == "rr" || s == "reg") return GraphFamily::Rr;
    if (s == "hk") return GraphFamily::Hk;
    return std::nullopt;
}

void validate_spec(const GenSpec& spec) {
    if (spec.n_min < 0 || spec.n_max < spec.n_min)
        throw ConfigError("bad vertex-count range");
    switch (spec.family) {
        case GraphFamily::Er:
            if (spec.er_p < 0.0 || spec.er_p > 1.0) throw ConfigError("er: p outside [0,1]");
            break;
        case GraphFamily::Ba:
            if (spec.ba_m < 1) throw ConfigError("ba: m must be >= 1");
            if (spec.ba_m >= spec.n_min) throw ConfigError("ba: m must be < n");
            break;
        case GraphFamily::Ws:
            if (spec.ws_k < 0) throw ConfigError("ws: k must be >= 0");
            if (spec.ws_k >= spec.n_min) throw ConfigError("ws: k >= n");
            if (spec.ws_p < 0.0 || spec.ws_p > 1.0) throw ConfigError("ws: p outside [0,1]");
            break;
        case GraphFamily::Rr: {
            if (spec.rr_d < 0) throw ConfigError("rr: d must be >= 0");
            if (spec.rr_d >= spec.n_min && spec.rr_d > 0) throw ConfigError("rr: d >= n");
            // d odd requires an even n somewhere in the range
            if (spec.rr_d % 2 == 1 && spec.n_min == spec.n_max && spec.n_min % 2 == 1)
                throw ConfigError("rr: n*d cannot be made even in the given range");
            break;
        }
        case GraphFamily::Hk:
            if (spec.hk_m_min < 1 || spec.hk_m_max < spec.hk_m_min)
                throw ConfigError("hk: bad m range");
            if (spec.hk_m_max >= spec.n_min) throw ConfigError("hk: m must be < n");
            if (spec.hk_p < 0.0 || spec.hk_p > 1.0) throw ConfigError("hk: p outside [0,1]");
            break;
    }
}

namespace {

using EdgeVec = std::vector<std::pair<int, int>>;

uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return ((uint64_t)u << 32) | (uint32_t)v;
}

EdgeVec gen_er(Rng& rng, int n, double p) {
    EdgeVec edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
    return edges;
}

// Repeated-nodes preferential attachment: each new vertex connects to m
// distinct existing vertices drawn degree-proportionally, so the edge count
// is exactly m*(n-m).
EdgeVec gen_ba(Rng& rng, int n, int m) {
    EdgeVec edges;
    std::vector<int> repeated;
    std::vector<int> targets(m);
    for (int i = 0; i < m; ++i) targets[i] = i;
    for (int source = m; source < n; ++source) {
        for (int t : targets) {
            edges.emplace_back(source, t);
            repeated.push_back(t);
            repeated.push_back(source);
        }
        if (source + 1 >= n) break;
        std::unordered_set<int> picked;
        while ((int)picked.size() < m)
            picked.insert(repeated[rng.uniform_u64(repeated.size())]);
        targets.assign(picked.begin(), picked.end());
        std::sort(targets.begin(), targets.end());
    }
    return edges;
}

// Ring lattice with k/2 neighbors per side, then each lattice edge rewired
// with probability p to a uniformly chosen non-duplicate endpoint.
EdgeVec gen_ws(Rng& rng, int n, int k, double p) {
    std::unordered_set<uint64_t> present;
    std::vector<int> deg(n, 0);
    const int half = k / 2;
    for (int j = 1; j <= half; ++j)
        for (int u = 0; u < n; ++u) {
            const int v = (u + j) % n;
            if (present.insert(edge_key(u, v)).second) {
                ++deg[u];
                ++deg[v];
            }
        }
    for (int j = 1; j <= half; ++j)
        for (int u = 0; u < n; ++u) {
            if (!rng.bernoulli(p)) continue;
            const int v = (u + j) % n;
            if (deg[u] >= n - 1) continue;  // saturated, nothing to rewire to
            if (!present.count(edge_key(u, v))) continue;
            int w = (int)rng.uniform_u64(n);
            while (w == u || present.count(edge_key(u, w))) w = (int)rng.uniform_u64(n);
            present.erase(edge_key(u, v));
            present.insert(edge_key(u, w));
            --deg[v];
            ++deg[w];
        }
    EdgeVec edges;
    edges.reserve(present.size());
    for (uint64_t key : present) edges.emplace_back((int)(key >> 32), (int)(uint32_t)key);
    std::sort(edges.begin(), edges.end());
    return edges;
}

// Pairing model: match d stubs per vertex avoiding loops and duplicates,
// restarting when stuck.
EdgeVec gen_rr(Rng& rng, int n, int d) {
    if (d == 0) return {};
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::unordered_set<uint64_t> present;
        EdgeVec edges;
        std::vector<int> stubs;
        stubs.reserve((size_t)n * d);
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < d; ++i) stubs.push_back(v);
        bool stuck = false;
        while (!stubs.empty() && !stuck) {
            rng.shuffle(stubs);
            std::vector<int> leftover;
            for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
                const int a = stubs[i], b = stubs[i + 1];
                if (a != b && present.insert(edge_key(a, b)).second) {
                    edges.emplace_back(std::min(a, b), std::max(a, b));
                } else {
                    leftover.push_back(a);
                    leftover.push_back(b);
                }
            }
            stuck = leftover.size() == stubs.size();
            stubs = std::move(leftover);
        }
        if (stubs.empty()) {
            std::sort(edges.begin(), edges.end());
            return edges;
        }
    }
    throw ConfigError("rr: failed to realize a simple regular graph");
}

// Holme-Kim: preferential attachment where each extra edge closes a triangle
// with probability p.
EdgeVec gen_hk(Rng& rng, int n, int m, double p) {
    std::unordered_set<uint64_t> present;
    EdgeVec edges;
    std::vector<int> repeated;
    std::vector<std::vector<int>> adj(n);
    auto add_edge = [&](int u, int v) {
        present.insert(edge_key(u, v));
        edges.emplace_back(std::min(u, v), std::max(u, v));
        adj[u].push_back(v);
        adj[v].push_back(u);
    };
    for (int i = 0; i < m; ++i) repeated.push_back(i);
    for (int source = m; source < n; ++source) {
        // m distinct preferential targets for this vertex
        std::unordered_set<int> picked;
        while ((int)picked.size() < m)
            picked.insert(repeated[rng.uniform_u64(repeated.size())]);
        std::vector<int> targets(picked.begin(), picked.end());
        std::sort(targets.begin(), targets.end());

        size_t next_target = 0;
        int target = targets[next_target++];
        add_edge(source, target);
        repeated.push_back(target);
        int count = 1;
        while (count < m) {
            bool closed = false;
            if (rng.bernoulli(p)) {
                std::vector<int> nbh;
                for (int w : adj[target])
                    if (w != source && !present.count(edge_key(source, w))) nbh.push_back(w);
                if (!nbh.empty()) {
                    std::sort(nbh.begin(), nbh.end());
                    const int w = nbh[rng.uniform_u64(nbh.size())];
                    add_edge(source, w);
                    repeated.push_back(w);
                    ++count;
                    closed = true;
                }
            }
            if (!closed) {
                if (next_target >= targets.size()) break;  // ran out of fresh targets
                target = targets[next_target++];
                if (!present.count(edge_key(source, target))) {
                    add_edge(source, target);
                    repeated.push_back(target);
                    ++count;
                }
            }
        }
        for (int i = 0; i < m; ++i) repeated.push_back(source);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace

Graph generate(const GenSpec& spec) {
    validate_spec(spec);
    Rng rng(spec.seed);
    int n = rng.uniform_int(spec.n_min, spec.n_max);
    EdgeVec edges;
    switch (spec.family) {
        case GraphFamily::Er:
            edges = gen_er(rng, n, spec.er_p);
            break;
        case GraphFamily::Ba:
            edges = gen_ba(rng, n, spec.ba_m);
            break;
        case GraphFamily::Ws:
            edges = gen_ws(rng, n, spec.ws_k, spec.ws_p);
            break;
        case GraphFamily::Rr: {
            // the model needs n*d even; resample n until it is
            int guard = 0;
            while ((long long)n * spec.rr_d % 2 != 0) {
                if (++guard > 10000)
                    throw ConfigError("rr: n*d cannot be made even in the given range");
                n = rng.uniform_int(spec.n_min, spec.n_max);
            }
            edges = gen_rr(rng, n, spec.rr_d);
            break;
        }
        case GraphFamily::Hk: {
            const int m = rng.uniform_int(spec.hk_m_min, spec.hk_m_max);
            edges = gen_hk(rng, n, m, spec.hk_p);
            break;
        }
    }
    return normalize(n, edges).graph;
}

namespace {

GenSpec base_spec(GraphFamily f, int n_lo, int n_hi) {
    GenSpec s;
    s.family = f;
    s.n_min = n_lo;
    s.n_max = n_hi;
    return s;
}

}  // namespace

std::optional<GenSpec> profile_spec(std::string_view name) {
    // paper-scale configurations
    if (name == "er_ss") { auto s = base_spec(GraphFamily::Er, 700, 800); s.er_p = 0.03; return s; }
    if (name == "er_sd") { auto s = base_spec(GraphFamily::Er, 700, 800); s.er_p = 0.08; return s; }
    if (name == "er_ls") { auto s = base_spec(GraphFamily::Er, 1000, 1200); s.er_p = 0.03; return s; }
    if (name == "er_ld") { auto s = base_spec(GraphFamily::Er, 1000, 1200); s.er_p = 0.08; return s; }
    if (name == "ba_ss") { auto s = base_spec(GraphFamily::Ba, 700, 800); s.ba_m = 3; return s; }
    if (name == "ba_sd") { auto s = base_spec(GraphFamily::Ba, 700, 800); s.ba_m = 15; return s; }
    if (name == "ba_ls") { auto s = base_spec(GraphFamily::Ba, 1000, 1200); s.ba_m = 3; return s; }
    if (name == "ba_ld") { auto s = base_spec(GraphFamily::Ba, 1000, 1200); s.ba_m = 15; return s; }
    if (name == "ws_ss") { auto s = base_spec(GraphFamily::Ws, 700, 800); s.ws_k = 15; s.ws_p = 0.1; return s; }
    if (name == "ws_sd") { auto s = base_spec(GraphFamily::Ws, 700, 800); s.ws_k = 25; s.ws_p = 0.1; return s; }
    if (name == "ws_ls") { auto s = base_spec(GraphFamily::Ws, 1000, 1200); s.ws_k = 15; s.ws_p = 0.1; return s; }
    if (name == "ws_ld") { auto s = base_spec(GraphFamily::Ws, 1000, 1200); s.ws_k = 25; s.ws_p = 0.1; return s; }
    if (name == "reg_ss") { auto s = base_spec(GraphFamily::Rr, 800, 900); s.rr_d = 6; return s; }
    if (name == "reg_sd") { auto s = base_spec(GraphFamily::Rr, 800, 900); s.rr_d = 16; return s; }
    if (name == "reg_ls") { auto s = base_spec(GraphFamily::Rr, 1000, 1200); s.rr_d = 6; return s; }
    if (name == "reg_ld") { auto s = base_spec(GraphFamily::Rr, 1000, 1200); s.rr_d = 16; return s; }
    if (name == "hk_ss") { auto s = base_spec(GraphFamily::Hk, 700, 800); s.hk_m_min = 3; s.hk_m_max = 7; s.hk_p = 0.3; return s; }
    if (name == "hk_sd") { auto s = base_spec(GraphFamily::Hk, 700, 800); s.hk_m_min = 10; s.hk_m_max = 15; s.hk_p = 0.3; return s; }
    if (name == "hk_ls") { auto s = base_spec(GraphFamily::Hk, 1000, 1200); s.hk_m_min = 3; s.hk_m_max = 7; s.hk_p = 0.3; return s; }
    if (name == "hk_ld") { auto s = base_spec(GraphFamily::Hk, 1000, 1200); s.hk_m_min = 10; s.hk_m_max = 15; s.hk_p = 0.3; return s; }
    // desk-scale profiles: small and sparse enough that the exact reference runs in seconds
    if (name == "desk_er") { auto s = base_spec(GraphFamily::Er, 40, 80); s.er_p = 0.05; return s; }
    if (name == "desk_ba") { auto s = base_spec(GraphFamily::Ba, 40, 80); s.ba_m = 2; return s; }
    if (name == "desk_ws") { auto s = base_spec(GraphFamily::Ws, 40, 80); s.ws_k = 4; s.ws_p = 0.1; return s; }
    if (name == "desk_reg") { auto s = base_spec(GraphFamily::Rr, 40, 80); s.rr_d = 3; return s; }
    if (name == "desk_hk") { auto s = base_spec(GraphFamily::Hk, 40, 80); s.hk_m_min = 2; s.hk_m_max = 3; s.hk_p = 0.3; return s; }
    return std::nullopt;
}

std::vector<std::string> profile_names() {
    return {"er_ss",  "er_sd",  "er_ls",  "er_ld",  "ba_ss",   "ba_sd",  "ba_ls",
            "ba_ld",  "ws_ss",  "ws_sd",  "ws_ls",  "ws_ld",   "reg_ss", "reg_sd",
            "reg_ls", "reg_ld", "hk_ss",  "hk_sd",  "hk_ls",   "hk_ld",  "desk_er",
            "desk_ba", "desk_ws", "desk_reg", "desk_hk"};
}

}  // namespace nfpt
