#include "nfpt/exact.hpp"

#include <bit>
#include <stdexcept>

#include "nfpt/tree_decomp.hpp"

namespace nfpt {

namespace {

Assignment mask_to_assignment(int n, uint32_t mask) {
    Assignment a(n, VertexState::Out);
    for (int v = 0; v < n; ++v)
        if (mask >> v & 1) a[v] = VertexState::In;
    return a;
}

}  // namespace

DPOutcome brute_force(const Graph& g, ProblemKind kind) {
    const int n = g.num_vertices();
    if (n > 26) throw std::invalid_argument("brute force refused beyond 26 vertices");

    std::vector<uint32_t> adj(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u)) adj[u] |= 1u << v;

    const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    auto independent = [&](uint32_t s) {
        for (uint32_t rest = s; rest;) {
            const int v = std::countr_zero(rest);
            if (adj[v] & s) return false;
            rest &= rest - 1;
        }
        return true;
    };

    DPOutcome out;
    switch (kind) {
        case ProblemKind::Mis: {
            int best = -1;
            uint32_t best_mask = 0;
            for (uint32_t s = 0; s <= full && full; ++s) {
                const int size = std::popcount(s);
                if (size <= best) continue;
                if (independent(s)) {
                    best = size;
                    best_mask = s;
                }
                if (s == full) break;
            }
            if (best < 0) best = 0;  // empty graph
            out.value = best;
            out.assignment = mask_to_assignment(n, best_mask);
            break;
        }
        case ProblemKind::Mvc: {
            int best = n + 1;
            uint32_t best_mask = full;
            for (uint32_t s = 0;; ++s) {
                const int size = std::popcount(s);
                // S covers every edge iff its complement is independent
                if (size < best && independent(full & ~s)) {
                    best = size;
                    best_mask = s;
                }
                if (s == full) break;
            }
            if (n == 0) best = 0;
            out.value = best;
            out.assignment = mask_to_assignment(n, best_mask);
            break;
        }
        case ProblemKind::MaxCut: {
            long long best = -1;
            uint32_t best_mask = 0;
            // vertex 0 pinned to one side; complements give the same cut
            const uint32_t limit = n >= 1 ? (1u << (n - 1)) : 1;
            for (uint32_t half = 0; half < limit; ++half) {
                const uint32_t s = half << 1;
                long long cut = 0;
                for (uint32_t rest = s; rest;) {
                    const int v = std::countr_zero(rest);
                    cut += std::popcount(adj[v] & full & ~s);
                    rest &= rest - 1;
                }
                if (cut > best) {
                    best = cut;
                    best_mask = s;
                }
            }
            if (n == 0) best = 0;
            out.value = best;
            out.assignment = mask_to_assignment(n, best_mask);
            break;
        }
    }
    return out;
}

Reference reference_opt(const Graph& g, ProblemKind kind, int max_width,
                        std::optional<long long> best_known) {
    if (g.num_vertices() <= 26) return {brute_force(g, kind).value, true};

    const TreeDecomposition td = prune_bags(min_degree_td(g));
    if (td.width() <= max_width) {
        try {
            const RootedTd rooted = root_and_order(td);
            return {tdpa_solve(g, rooted, Modulator{}, AdviceString{}, kind).value, true};
        } catch (const ResourceLimit&) {
            // fall through to best-known
        }
    }
    if (best_known) return {*best_known, false};
    throw std::invalid_argument("no exact route and no best-known value supplied");
}

}  // namespace nfpt
