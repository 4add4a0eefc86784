#include "nfpt/tree_decomp.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

namespace nfpt {

int TreeDecomposition::width() const {
    size_t largest = 0;
    for (const auto& bag : bags) largest = std::max(largest, bag.size());
    return (int)largest - 1;
}

namespace {

// row-per-vertex bitset adjacency used for the fill-in working copy
struct BitAdj {
    int n, words;
    std::vector<uint64_t> bits;

    explicit BitAdj(int n) : n(n), words((n + 63) / 64), bits((size_t)n * words, 0) {}

    uint64_t* row(int u) { return bits.data() + (size_t)u * words; }
    const uint64_t* row(int u) const { return bits.data() + (size_t)u * words; }

    void set(int u, int v) { row(u)[v >> 6] |= 1ull << (v & 63); }
    void clear(int u, int v) { row(u)[v >> 6] &= ~(1ull << (v & 63)); }
    bool test(int u, int v) const { return row(u)[v >> 6] >> (v & 63) & 1; }

    int popcount(int u) const {
        const uint64_t* r = row(u);
        int c = 0;
        for (int w = 0; w < words; ++w) c += std::popcount(r[w]);
        return c;
    }

    template <class F>
    void for_each(int u, F f) const {
        const uint64_t* r = row(u);
        for (int w = 0; w < words; ++w) {
            uint64_t word = r[w];
            while (word) {
                const int b = std::countr_zero(word);
                f(w * 64 + b);
                word &= word - 1;
            }
        }
    }
};

}  // namespace

TreeDecomposition min_degree_td(const Graph& g) {
    const int n = g.num_vertices();
    TreeDecomposition td;
    if (n == 0) return td;

    BitAdj adj(n);
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u)) adj.set(u, v);

    std::vector<int> degree(n);
    for (int u = 0; u < n; ++u) degree[u] = g.degree(u);

    std::vector<char> alive(n, 1);
    std::vector<int> elim_pos(n, -1);
    std::vector<int> bag_of_vertex(n, -1);  // bag created when the vertex was eliminated
    int remaining = n;
    int step = 0;

    while (remaining > 0) {
        // residual clique (includes isolated leftovers of size 1): emit one bag
        bool clique = true;
        for (int v = 0; v < n && clique; ++v)
            if (alive[v] && degree[v] != remaining - 1) clique = false;
        if (clique) {
            std::vector<int> bag;
            bag.reserve(remaining);
            for (int v = 0; v < n; ++v)
                if (alive[v]) {
                    bag.push_back(v);
                    elim_pos[v] = step++;
                    bag_of_vertex[v] = (int)td.bags.size();
                }
            td.bags.push_back(std::move(bag));
            break;
        }

        int u = -1;
        for (int v = 0; v < n; ++v)
            if (alive[v] && (u < 0 || degree[v] < degree[u])) u = v;

        std::vector<int> nbrs;
        nbrs.reserve(degree[u]);
        adj.for_each(u, [&](int v) { nbrs.push_back(v); });

        std::vector<int> bag;
        bag.reserve(nbrs.size() + 1);
        bag.push_back(u);
        bag.insert(bag.end(), nbrs.begin(), nbrs.end());
        std::sort(bag.begin(), bag.end());
        bag_of_vertex[u] = (int)td.bags.size();
        td.bags.push_back(std::move(bag));

        // fill in: N(u) becomes a clique; u leaves the working graph
        for (int v : nbrs) {
            uint64_t* rv = adj.row(v);
            const uint64_t* ru = adj.row(u);
            for (int w = 0; w < adj.words; ++w) rv[w] |= ru[w];
            adj.clear(v, v);
            adj.clear(v, u);
            degree[v] = adj.popcount(v);
        }
        for (int v : nbrs) adj.clear(u, v);
        alive[u] = 0;
        elim_pos[u] = step++;
        --remaining;
    }

    // Attach each bag under the bag of the first-eliminated vertex among its
    // other members; that bag is the most recent later-created one containing
    // the whole neighborhood. Bags whose vertex had no later neighbors are
    // component roots.
    for (int b = 0; b < (int)td.bags.size(); ++b) {
        int parent_vertex = -1;
        for (int v : td.bags[b]) {
            if (bag_of_vertex[v] == b) continue;
            if (parent_vertex < 0 || elim_pos[v] < elim_pos[parent_vertex]) parent_vertex = v;
        }
        if (parent_vertex >= 0) td.tree_edges.emplace_back(b, bag_of_vertex[parent_vertex]);
    }
    return td;
}

TdCheck validate_td(const Graph& g, const TreeDecomposition& td) {
    const int n = g.num_vertices();
    const int nb = td.num_bags();

    for (const auto& bag : td.bags)
        for (int v : bag)
            if (v < 0 || v >= n) return {false, "structure"};
    for (auto [a, b] : td.tree_edges)
        if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) return {false, "structure"};

    // acyclic: union-find over tree edges
    std::vector<int> uf(nb);
    for (int i = 0; i < nb; ++i) uf[i] = i;
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (auto [a, b] : td.tree_edges) {
        const int ra = find(a), rb = find(b);
        if (ra == rb) return {false, "structure"};
        uf[ra] = rb;
    }

    std::vector<char> covered(n, 0);
    for (const auto& bag : td.bags)
        for (int v : bag) covered[v] = 1;
    for (int v = 0; v < n; ++v)
        if (!covered[v]) return {false, "union"};

    std::vector<std::vector<int>> bags_of(n);
    for (int b = 0; b < nb; ++b)
        for (int v : td.bags[b]) bags_of[v].push_back(b);

    auto us = g.edge_us();
    auto vs = g.edge_vs();
    for (size_t i = 0; i < us.size(); ++i) {
        const auto& bu = bags_of[us[i]];
        const auto& bv = bags_of[vs[i]];
        bool found = false;
        size_t a = 0, b = 0;
        while (a < bu.size() && b < bv.size()) {
            if (bu[a] == bv[b]) { found = true; break; }
            if (bu[a] < bv[b]) ++a;
            else ++b;
        }
        if (!found) return {false, "edge"};
    }

    // per-vertex bag sets must be connected in the tree
    std::vector<std::vector<int>> tree_adj(nb);
    for (auto [a, b] : td.tree_edges) {
        tree_adj[a].push_back(b);
        tree_adj[b].push_back(a);
    }
    std::vector<int> mark(nb, -1);
    for (int v = 0; v < n; ++v) {
        const auto& bs = bags_of[v];
        if (bs.size() <= 1) continue;
        for (int b : bs) mark[b] = v;
        std::deque<int> queue{bs[0]};
        mark[bs[0]] = ~v;  // visited
        size_t seen = 1;
        while (!queue.empty()) {
            const int b = queue.front();
            queue.pop_front();
            for (int c : tree_adj[b])
                if (mark[c] == v) {
                    mark[c] = ~v;
                    ++seen;
                    queue.push_back(c);
                }
        }
        if (seen != bs.size()) return {false, "subtree"};
    }
    return {true, ""};
}

TreeDecomposition prune_bags(const TreeDecomposition& td) {
    const int nb = td.num_bags();
    if (nb <= 1) return td;

    std::vector<std::vector<int>> adj(nb);
    for (auto [a, b] : td.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> alive(nb, 1);

    auto subset = [&](const std::vector<int>& x, const std::vector<int>& y) {
        return std::includes(y.begin(), y.end(), x.begin(), x.end());
    };
    auto drop_neighbor = [&](int from, int who) {
        auto& v = adj[from];
        v.erase(std::find(v.begin(), v.end(), who));
    };

    std::deque<std::pair<int, int>> work(td.tree_edges.begin(), td.tree_edges.end());
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        if (!alive[a] || !alive[b]) continue;
        if (std::find(adj[a].begin(), adj[a].end(), b) == adj[a].end()) continue;
        int victim = -1, keeper = -1;
        if (subset(td.bags[a], td.bags[b])) {
            victim = a;
            keeper = b;
        } else if (subset(td.bags[b], td.bags[a])) {
            victim = b;
            keeper = a;
        } else {
            continue;
        }
        // reconnect the victim's other neighbors to the absorbing bag
        drop_neighbor(keeper, victim);
        for (int c : adj[victim]) {
            if (c == keeper) continue;
            drop_neighbor(c, victim);
            adj[c].push_back(keeper);
            adj[keeper].push_back(c);
            work.emplace_back(keeper, c);
        }
        adj[victim].clear();
        alive[victim] = 0;
    }

    TreeDecomposition out;
    std::vector<int> remap(nb, -1);
    for (int b = 0; b < nb; ++b)
        if (alive[b]) {
            remap[b] = (int)out.bags.size();
            out.bags.push_back(td.bags[b]);
        }
    for (int b = 0; b < nb; ++b) {
        if (!alive[b]) continue;
        for (int c : adj[b])
            if (b < c) out.tree_edges.emplace_back(remap[b], remap[c]);
    }
    return out;
}

RootedTd root_and_order(const TreeDecomposition& td, int root) {
    RootedTd r;
    r.td = td;
    const int nb0 = td.num_bags();
    if (nb0 == 0) return r;
    assert(root >= 0 && root < nb0);

    std::vector<std::vector<int>> adj(nb0);
    for (auto [a, b] : td.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());

    std::vector<int> parent(nb0, -2);  // -2 = unvisited
    std::vector<int> component_roots;
    auto bfs = [&](int start) {
        parent[start] = -1;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            const int b = queue.front();
            queue.pop_front();
            for (int c : adj[b])
                if (parent[c] == -2) {
                    parent[c] = b;
                    queue.push_back(c);
                }
        }
    };
    bfs(root);
    component_roots.push_back(root);
    for (int b = 0; b < nb0; ++b)
        if (parent[b] == -2) {
            bfs(b);
            component_roots.push_back(b);
        }

    int nb = nb0;
    if (component_roots.size() > 1) {
        // forest: virtual empty root above all components
        r.td.bags.emplace_back();
        const int vroot = nb++;
        parent.push_back(-1);
        for (int cr : component_roots) {
            parent[cr] = vroot;
            r.td.tree_edges.emplace_back(cr, vroot);
        }
        root = vroot;
    }

    r.root = root;
    r.parent = std::move(parent);
    r.children.assign(nb, {});
    for (int b = 0; b < nb; ++b)
        if (r.parent[b] >= 0) r.children[r.parent[b]].push_back(b);

    r.depth.assign(nb, 0);
    r.order.reserve(nb);
    // iterative postorder
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto& [b, next] = stack.back();
        if (next == 0 && r.parent[b] >= 0) r.depth[b] = r.depth[r.parent[b]] + 1;
        if (next < r.children[b].size()) {
            const int c = r.children[b][next++];
            stack.emplace_back(c, 0);
        } else {
            r.order.push_back(b);
            stack.pop_back();
        }
    }
    return r;
}

void write_td(std::ostream& out, const RootedTd& td) {
    for (int b = 0; b < td.td.num_bags(); ++b) {
        out << b << ' ' << td.parent[b];
        for (int v : td.td.bags[b]) out << ' ' << v;
        out << '\n';
    }
}

RootedTd read_td(std::istream& in) {
    TreeDecomposition td;
    std::vector<int> parent;
    std::string line;
    int expect = 0;
    int root = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int t, p;
        if (!(ls >> t >> p) || t != expect) throw ParseError("bad decomposition line");
        std::vector<int> bag;
        int v;
        while (ls >> v) bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        parent.push_back(p);
        if (p < 0) root = t;
        else td.tree_edges.emplace_back(t, p);
        ++expect;
    }
    if (root < 0 && expect > 0) throw ParseError("decomposition has no root");
    return root_and_order(td, std::max(root, 0));
}

}  // namespace nfpt
