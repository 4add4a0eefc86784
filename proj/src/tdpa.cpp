#include "nfpt/tdpa.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>

#include "nfpt/kernels.hpp"

namespace nfpt {

namespace {

// Infeasibility sentinel. Small enough that a value can absorb one sentinel
// per child bag without overflowing, large enough to dwarf any real
// objective.
constexpr int64_t kBigValue = 1ll << 48;
constexpr int64_t kBadThreshold = 1ll << 47;

constexpr uint32_t kNoState = std::numeric_limits<uint32_t>::max();

inline bool bad_value(int64_t v) { return v > kBadThreshold || v < -kBadThreshold; }

// Everything the DP needs to know about one bag, with states encoded as bit
// masks over the bag's undecided ("free") vertices in ascending id order.
struct BagPlan {
    std::vector<int> free_vertices;
    uint32_t forced_in = 0;       // positions an adjacent advice decision pins to In
    uint32_t forced_out = 0;
    bool dead = false;            // advice alone violates a constraint here
    int64_t const_value = 0;      // credited advice vertices / settled designated edges
    uint32_t credit_mask = 0;     // free positions credited at this bag

    // free-free in-bag edges, as position pairs (MIS conflicts / MVC coverage)
    std::vector<std::pair<int, int>> local_edges;
    // Max-Cut designated free-free edges and free-advice edges
    std::vector<std::pair<int, int>> cut_pairs;
    std::vector<std::pair<int, int>> cut_singles;  // (position, advice side)

    // The separator (free vertices shared with the parent) as a position mask
    // in this bag and in the parent bag. Both select the same vertices in
    // ascending id order, so extracted keys agree.
    uint32_t sep_mask = 0;
    uint32_t sep_mask_in_parent = 0;
};

int position_of(const std::vector<int>& sorted, int v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    return (it != sorted.end() && *it == v) ? (int)(it - sorted.begin()) : -1;
}

}  // namespace

std::vector<Assignment> enumerate_bag_states(const Graph& g, std::span<const int> bag,
                                             const AdviceString& advice, ProblemKind kind) {
    std::vector<int> sorted_bag(bag.begin(), bag.end());
    std::sort(sorted_bag.begin(), sorted_bag.end());

    std::vector<int8_t> fixed(g.num_vertices(), -1);
    for (size_t i = 0; i < advice.vertices.size(); ++i)
        fixed[advice.vertices[i]] = advice.take[i] ? 1 : 0;

    std::vector<int> free_vertices;
    for (int v : sorted_bag)
        if (fixed[v] < 0) free_vertices.push_back(v);
    const int f = (int)free_vertices.size();
    if (f > 25) throw ResourceLimit("bag has too many undecided vertices to enumerate");

    // in-bag edges
    std::vector<std::pair<int, int>> in_bag_edges;
    for (int v : sorted_bag)
        for (int w : g.neighbors(v))
            if (w > v && std::binary_search(sorted_bag.begin(), sorted_bag.end(), w))
                in_bag_edges.emplace_back(v, w);

    std::vector<Assignment> out;
    for (uint32_t state = 0; state < (1u << f); ++state) {
        Assignment a(g.num_vertices(), VertexState::Undecided);
        for (int v : sorted_bag)
            if (fixed[v] >= 0) a[v] = fixed[v] ? VertexState::In : VertexState::Out;
        for (int i = 0; i < f; ++i)
            a[free_vertices[i]] = (state >> i & 1) ? VertexState::In : VertexState::Out;
        bool ok = true;
        if (kind != ProblemKind::MaxCut) {
            for (auto [v, w] : in_bag_edges) {
                const bool vin = a[v] == VertexState::In, win = a[w] == VertexState::In;
                if (kind == ProblemKind::Mis ? (vin && win) : (!vin && !win)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) out.push_back(std::move(a));
    }
    return out;
}

DPOutcome tdpa_solve(const Graph& g, const RootedTd& td, const Modulator& mod,
                     const AdviceString& advice, ProblemKind kind, const TdpaLimits& limits) {
    if (advice.vertices != mod.vertices)
        throw std::invalid_argument("advice domain must equal the modulator");
    const int n = g.num_vertices();
    DPOutcome out;
    if (n == 0) return out;
    const int nb = td.td.num_bags();
    if (nb == 0) throw std::invalid_argument("decomposition is empty for a nonempty graph");

    const bool maximize = maximizing(kind);
    const int64_t sentinel = maximize ? -kBigValue : kBigValue;

    std::vector<int8_t> fixed(n, -1);
    for (size_t i = 0; i < advice.size(); ++i)
        fixed[advice.vertices[i]] = advice.take[i] ? 1 : 0;

    // MIS advice must be independent inside the modulator
    if (kind == ProblemKind::Mis) {
        auto us = g.edge_us();
        auto vs = g.edge_vs();
        for (size_t i = 0; i < us.size(); ++i)
            if (fixed[us[i]] == 1 && fixed[vs[i]] == 1)
                throw AdviceInfeasible("advice selects both endpoints of an edge");
    }

    // Root-most attribution. For vertices: the containing bag nearest the
    // root. For edges: the nearest bag containing both endpoints.
    std::vector<std::vector<int>> bags_of(n);
    for (const int b : td.order)
        for (int v : td.td.bags[b]) bags_of[v].push_back(b);

    std::vector<int> credit_bag(n, -1);
    for (int v = 0; v < n; ++v) {
        if (bags_of[v].empty()) throw std::invalid_argument("vertex missing from decomposition");
        int best = bags_of[v][0];
        for (int b : bags_of[v])
            if (td.depth[b] < td.depth[best]) best = b;
        credit_bag[v] = best;
    }

    auto us = g.edge_us();
    auto vs = g.edge_vs();
    std::vector<int> edge_bag(us.size(), -1);
    for (size_t e = 0; e < us.size(); ++e) {
        const auto& bu = bags_of[us[e]];
        const auto& bv = bags_of[vs[e]];
        int best = -1;
        size_t a = 0, b = 0;
        while (a < bu.size() && b < bv.size()) {
            if (bu[a] == bv[b]) {
                if (best < 0 || td.depth[bu[a]] < td.depth[best]) best = bu[a];
                ++a;
                ++b;
            } else if (bu[a] < bv[b]) {
                ++a;
            } else {
                ++b;
            }
        }
        if (best < 0) throw std::invalid_argument("edge not covered by the decomposition");
        edge_bag[e] = best;
    }

    // Per-bag plans
    std::vector<BagPlan> plan(nb);
    long long total_states = 0;
    for (int b = 0; b < nb; ++b) {
        BagPlan& p = plan[b];
        const auto& bag = td.td.bags[b];
        for (int v : bag)
            if (fixed[v] < 0) p.free_vertices.push_back(v);
        const int f = (int)p.free_vertices.size();
        if (f > limits.max_free_bits)
            throw ResourceLimit("bag state space exceeds the per-bag limit");
        total_states += 1ll << f;
        if (total_states > limits.max_total_states)
            throw ResourceLimit("total state space exceeds the limit");

        for (int v : bag) {
            if (fixed[v] < 0) {
                if (credit_bag[v] == b && kind != ProblemKind::MaxCut)
                    p.credit_mask |= 1u << position_of(p.free_vertices, v);
            } else if (fixed[v] == 1 && credit_bag[v] == b && kind != ProblemKind::MaxCut) {
                p.const_value += 1;
            }
        }
    }

    for (size_t e = 0; e < us.size(); ++e) {
        const int u = (int)us[e], v = (int)vs[e];
        // constraints act in every bag containing the edge; counting happens
        // in the designated bag only
        if (kind != ProblemKind::MaxCut) {
            const auto& bu = bags_of[u];
            const auto& bv = bags_of[v];
            size_t a = 0, b = 0;
            while (a < bu.size() && b < bv.size()) {
                if (bu[a] == bv[b]) {
                    BagPlan& p = plan[bu[a]];
                    const int pu = fixed[u] < 0 ? position_of(p.free_vertices, u) : -1;
                    const int pv = fixed[v] < 0 ? position_of(p.free_vertices, v) : -1;
                    if (kind == ProblemKind::Mis) {
                        if (pu >= 0 && pv >= 0) p.local_edges.emplace_back(pu, pv);
                        else if (pu >= 0 && fixed[v] == 1) p.forced_out |= 1u << pu;
                        else if (pv >= 0 && fixed[u] == 1) p.forced_out |= 1u << pv;
                        else if (pu < 0 && pv < 0 && fixed[u] == 1 && fixed[v] == 1) p.dead = true;
                    } else {  // MVC coverage
                        if (pu >= 0 && pv >= 0) p.local_edges.emplace_back(pu, pv);
                        else if (pu >= 0 && fixed[v] == 0) p.forced_in |= 1u << pu;
                        else if (pv >= 0 && fixed[u] == 0) p.forced_in |= 1u << pv;
                        else if (pu < 0 && pv < 0 && fixed[u] == 0 && fixed[v] == 0) p.dead = true;
                    }
                    ++a;
                    ++b;
                } else if (bu[a] < bv[b]) {
                    ++a;
                } else {
                    ++b;
                }
            }
        } else {
            BagPlan& p = plan[edge_bag[e]];
            const int pu = fixed[u] < 0 ? position_of(p.free_vertices, u) : -1;
            const int pv = fixed[v] < 0 ? position_of(p.free_vertices, v) : -1;
            if (pu >= 0 && pv >= 0) p.cut_pairs.emplace_back(pu, pv);
            else if (pu >= 0) p.cut_singles.emplace_back(pu, fixed[v]);
            else if (pv >= 0) p.cut_singles.emplace_back(pv, fixed[u]);
            else if (fixed[u] != fixed[v]) p.const_value += 1;
        }
    }

    // separator masks (free vertices shared with the parent)
    for (int b = 0; b < nb; ++b) {
        if (td.parent[b] < 0) continue;
        BagPlan& p = plan[b];
        const BagPlan& q = plan[td.parent[b]];
        for (int i = 0; i < (int)p.free_vertices.size(); ++i) {
            const int j = position_of(q.free_vertices, p.free_vertices[i]);
            if (j >= 0) {
                p.sep_mask |= 1u << i;
                p.sep_mask_in_parent |= 1u << j;
            }
        }
    }

    // bottom-up sweep
    std::vector<std::vector<int64_t>> table(nb);  // keyed by separator assignment
    std::vector<std::vector<uint32_t>> arg(nb);   // winning state per key, kept for reconstruction
    std::vector<uint32_t> states, keys;
    std::vector<int64_t> vals;

    out.stats.bags = nb;
    for (const int b : td.order) {
        const BagPlan& p = plan[b];
        const int f = (int)p.free_vertices.size();
        const uint32_t nstates = 1u << f;
        out.stats.enumerated_states += nstates;
        out.stats.max_bag_states = std::max(out.stats.max_bag_states, (long long)nstates);

        states.clear();
        vals.clear();
        if (!p.dead) {
            for (uint32_t s = 0; s < nstates; ++s) {
                if ((s & p.forced_out) != 0) continue;
                if ((s & p.forced_in) != p.forced_in) continue;
                if (kind == ProblemKind::Mis) {
                    bool ok = true;
                    for (auto [i, j] : p.local_edges)
                        if ((s >> i & 1) && (s >> j & 1)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                } else if (kind == ProblemKind::Mvc) {
                    bool ok = true;
                    for (auto [i, j] : p.local_edges)
                        if (!(s >> i & 1) && !(s >> j & 1)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                }
                int64_t value = p.const_value;
                if (kind == ProblemKind::MaxCut) {
                    for (auto [i, j] : p.cut_pairs) value += (s >> i & 1) ^ (s >> j & 1);
                    for (auto [i, side] : p.cut_singles) value += (int)(s >> i & 1) ^ side;
                } else {
                    value += std::popcount(s & p.credit_mask);
                }
                states.push_back(s);
                vals.push_back(value);
            }
        }

        // fold children in through their separator tables
        for (const int c : td.children[b]) {
            if (!states.empty()) {
                keys.resize(states.size());
                kernels::project_keys(states, plan[c].sep_mask_in_parent, keys);
                kernels::gather_add(vals, table[c], keys);
            }
            table[c].clear();
            table[c].shrink_to_fit();
        }

        const uint32_t key_count = 1u << std::popcount(p.sep_mask);
        table[b].assign(key_count, sentinel);
        arg[b].assign(key_count, kNoState);
        if (!states.empty()) {
            keys.resize(states.size());
            kernels::project_keys(states, p.sep_mask, keys);
            kernels::scatter_best(table[b], arg[b], keys, vals, maximize);
            // a state poisoned by an infeasible child is no state at all
            for (uint32_t k = 0; k < key_count; ++k)
                if (arg[b][k] != kNoState && bad_value(table[b][k])) {
                    table[b][k] = sentinel;
                    arg[b][k] = kNoState;
                }
        }
        // remap arg from "index into states" to the state mask itself
        for (uint32_t k = 0; k < key_count; ++k)
            if (arg[b][k] != kNoState) arg[b][k] = states[arg[b][k]];
    }

    const int root = td.root;
    if (arg[root][0] == kNoState) throw Infeasible("no assignment is consistent with the advice");
    out.value = table[root][0];

    // top-down reconstruction via the stored winning states
    out.assignment.assign(n, VertexState::Undecided);
    for (size_t i = 0; i < advice.size(); ++i)
        out.assignment[advice.vertices[i]] = advice.take[i] ? VertexState::In : VertexState::Out;

    std::vector<std::pair<int, uint32_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [b, key] = stack.back();
        stack.pop_back();
        const uint32_t state = arg[b][key];
        assert(state != kNoState);
        const BagPlan& p = plan[b];
        for (int i = 0; i < (int)p.free_vertices.size(); ++i)
            out.assignment[p.free_vertices[i]] =
                (state >> i & 1) ? VertexState::In : VertexState::Out;
        for (const int c : td.children[b]) {
            uint32_t child_key[1];
            const uint32_t st[1] = {state};
            kernels::project_keys(std::span<const uint32_t>(st, 1), plan[c].sep_mask_in_parent,
                                  std::span<uint32_t>(child_key, 1));
            stack.emplace_back(c, child_key[0]);
        }
    }
    return out;
}

}  // namespace nfpt
