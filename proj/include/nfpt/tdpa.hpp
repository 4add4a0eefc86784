#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nfpt/graph.hpp"
#include "nfpt/modulator.hpp"
#include "nfpt/tree_decomp.hpp"

namespace nfpt {

// One fixed in/out decision per modulator vertex. The domain must equal the
// modulator's vertex set.
struct AdviceString {
    std::vector<int> vertices;   // sorted ascending
    std::vector<uint8_t> take;   // 1 = In, 0 = Out, parallel to vertices

    size_t size() const { return vertices.size(); }
};

struct AdviceInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DpStats {
    long long enumerated_states = 0;  // sum over bags of 2^(undecided bag vertices)
    long long max_bag_states = 0;     // max over bags of the same count
    int bags = 0;
};

struct DPOutcome {
    long long value = 0;
    Assignment assignment;  // complete witness achieving value
    DpStats stats;
};

struct TdpaLimits {
    int max_free_bits = 22;                   // per-bag undecided-vertex cap
    long long max_total_states = 1ll << 27;   // sum over bags
};

// Bottom-up DP over the rooted decomposition with the advice fixed on the
// modulator. Each vertex is credited in its root-most bag and each edge in
// its root-most bag containing both endpoints, so the same engine handles
// MIS, MVC (minimized) and Max-Cut. With an empty modulator this is the
// plain exact DP.
//
// Throws AdviceInfeasible when MIS advice selects two adjacent modulator
// vertices, Infeasible when no assignment is consistent with the advice, and
// ResourceLimit when the bag tables would exceed the limits.
DPOutcome tdpa_solve(const Graph& g, const RootedTd& td, const Modulator& mod,
                     const AdviceString& advice, ProblemKind kind, const TdpaLimits& limits = {});

// All feasible bag-local assignments: 2^(bag minus advice domain) candidates,
// completed with the advice and filtered by the bag-local constraints of the
// problem. Returned as length-n assignments that are Undecided off the bag.
std::vector<Assignment> enumerate_bag_states(const Graph& g, std::span<const int> bag,
                                             const AdviceString& advice, ProblemKind kind);

}  // namespace nfpt
