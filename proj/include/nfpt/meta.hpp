#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nfpt/graph.hpp"
#include "nfpt/modulator.hpp"
#include "nfpt/oracle.hpp"

namespace nfpt {

// Incremental confidence level: vote over k trajectories per round, commit
// the consensus decisions, repeat until the modulator is fully committed.
struct IclParams {
    int k = 8;            // trajectories per round
    int kappa = 4;        // commit a decision when its vote count exceeds kappa
    int max_rounds = 16;
};

struct IclOutcome {
    AdviceString advice;      // committed state restricted to the modulator
    Assignment committed;     // final committed state (Undecided = never committed)
    Assignment completion;    // one final oracle extension of the committed state
    int rounds = 0;
    bool forced = false;      // max_rounds hit; rest of the modulator taken from
                              // the best trajectory of the final round
};

IclOutcome icl_run(Oracle& oracle, const Graph& g, ProblemKind kind, const Modulator& mod,
                   const IclParams& params, uint64_t seed);

// Randomized deferral: after each complete trajectory, revert ceil(rho*n)
// uniformly chosen decisions back to undecided (with kind-specific neighbor
// resets) and resample from the reverted state.
struct RdParams {
    double rho = 0.25;  // deferral fraction in [0,1]
    int rounds = 20;
};

struct RdRound {
    Assignment trajectory;
    AdviceString advice;
};

std::vector<RdRound> rd_run(Oracle& oracle, const Graph& g, ProblemKind kind,
                            const Modulator& mod, const RdParams& params, uint64_t seed);

// The reversion rule alone, for tests: reverted vertices become undecided;
// for MIS the neighbors of reverted In vertices are also reset, for MVC the
// neighbors of reverted Out vertices, for Max-Cut no neighbors.
Assignment rd_revert(const Graph& g, ProblemKind kind, const Assignment& complete,
                     std::span<const int> reverted);

}  // namespace nfpt
