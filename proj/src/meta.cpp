#include "nfpt/meta.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "nfpt/rng.hpp"

namespace nfpt {

namespace {

// Would committing v to `state` clash with already-committed decisions?
// MIS: two committed In endpoints of an edge; MVC: two committed Out
// endpoints (an uncoverable edge); Max-Cut: never.
bool commit_conflicts(const Graph& g, ProblemKind kind, const Assignment& committed, int v,
                      VertexState state) {
    if (kind == ProblemKind::MaxCut) return false;
    const VertexState clash = kind == ProblemKind::Mis ? VertexState::In : VertexState::Out;
    if (state != clash) return false;
    for (int w : g.neighbors(v))
        if (committed[w] == clash) return true;
    return false;
}

}  // namespace

IclOutcome icl_run(Oracle& oracle, const Graph& g, ProblemKind kind, const Modulator& mod,
                   const IclParams& params, uint64_t seed) {
    const int n = g.num_vertices();
    IclOutcome out;
    out.committed.assign(n, VertexState::Undecided);

    auto modulator_done = [&] {
        for (int v : mod.vertices)
            if (out.committed[v] == VertexState::Undecided) return false;
        return true;
    };

    std::vector<Assignment> round_trajectories;
    const bool maximize = maximizing(kind);

    while (out.rounds < params.max_rounds && !modulator_done()) {
        ++out.rounds;
        round_trajectories.clear();
        std::vector<int> votes(n, 0);
        for (int j = 0; j < params.k; ++j) {
            OracleCall call{&g, kind, out.committed, mix_seed(seed, out.rounds, j)};
            round_trajectories.push_back(oracle.produce(call).full);
            const Assignment& t = round_trajectories.back();
            for (int v = 0; v < n; ++v) votes[v] += t[v] == VertexState::In;
        }
        // commit consensus decisions, skipping any that conflict with the
        // committed state so far
        for (int v = 0; v < n; ++v) {
            if (out.committed[v] != VertexState::Undecided) continue;
            const int in_votes = votes[v];
            const int out_votes = params.k - votes[v];
            VertexState want = VertexState::Undecided;
            if (in_votes > params.kappa && in_votes >= out_votes) want = VertexState::In;
            else if (out_votes > params.kappa) want = VertexState::Out;
            if (want == VertexState::Undecided) continue;
            if (commit_conflicts(g, kind, out.committed, v, want)) continue;
            out.committed[v] = want;
        }
    }

    if (!modulator_done()) {
        // out of rounds: take the rest of the modulator from the best
        // trajectory of the final round
        out.forced = true;
        if (round_trajectories.empty()) {
            OracleCall call{&g, kind, out.committed, mix_seed(seed, 0, 0)};
            round_trajectories.push_back(oracle.produce(call).full);
        }
        const Assignment* best = &round_trajectories[0];
        long long best_value = evaluate(g, kind, *best);
        for (const Assignment& t : round_trajectories) {
            const long long value = evaluate(g, kind, t);
            if (maximize ? value > best_value : value < best_value) {
                best_value = value;
                best = &t;
            }
        }
        for (int v : mod.vertices)
            if (out.committed[v] == VertexState::Undecided) out.committed[v] = (*best)[v];
    }

    OracleCall final_call{&g, kind, out.committed, mix_seed(seed, (uint64_t)params.max_rounds + 1, 0)};
    out.completion = oracle.produce(final_call).full;
    out.advice = advice_from(out.completion, mod);
    return out;
}

Assignment rd_revert(const Graph& g, ProblemKind kind, const Assignment& complete,
                     std::span<const int> reverted) {
    Assignment seeded = complete;
    for (int v : reverted) seeded[v] = VertexState::Undecided;
    for (int v : reverted) {
        // a reverted In vertex (Out for MVC) releases the constraint it
        // imposed on its neighbors, so they reopen too
        const VertexState trigger = kind == ProblemKind::Mis ? VertexState::In : VertexState::Out;
        if (kind == ProblemKind::MaxCut) break;
        if (complete[v] != trigger) continue;
        for (int w : g.neighbors(v)) seeded[w] = VertexState::Undecided;
    }
    return seeded;
}

std::vector<RdRound> rd_run(Oracle& oracle, const Graph& g, ProblemKind kind,
                            const Modulator& mod, const RdParams& params, uint64_t seed) {
    const int n = g.num_vertices();
    std::vector<RdRound> rounds;
    rounds.reserve(params.rounds);

    Assignment state(n, VertexState::Undecided);
    for (int r = 0; r < params.rounds; ++r) {
        if (r > 0) {
            const int revert_count = std::min(n, (int)std::ceil(params.rho * n));
            Rng rng(mix_seed(seed, r, 0x7265766572ull));
            std::vector<int> ids = rng.permutation(n);
            ids.resize(revert_count);
            state = rd_revert(g, kind, rounds.back().trajectory, ids);
        }
        OracleCall call{&g, kind, state, mix_seed(seed, r, 0)};
        RdRound round;
        round.trajectory = oracle.produce(call).full;
        round.advice = advice_from(round.trajectory, mod);
        rounds.push_back(std::move(round));
    }
    return rounds;
}

}  // namespace nfpt
