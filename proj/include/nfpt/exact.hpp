#pragma once

#include <optional>

#include "nfpt/graph.hpp"
#include "nfpt/tdpa.hpp"

namespace nfpt {

// Ground truth by exhaustive enumeration of all 2^n assignments. Refuses
// n > 26 (std::invalid_argument).
DPOutcome brute_force(const Graph& g, ProblemKind kind);

struct Reference {
    long long value = 0;
    bool exact = false;
};

// Best available reference: brute force for n <= 26, else the full DP when
// the pruned decomposition is narrow enough, else the caller-supplied best
// known value flagged non-exact. Throws std::invalid_argument when no route
// applies and no best_known was given.
Reference reference_opt(const Graph& g, ProblemKind kind, int max_width = 18,
                        std::optional<long long> best_known = {});

}  // namespace nfpt
