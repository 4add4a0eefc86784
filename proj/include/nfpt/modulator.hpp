#pragma once

#include <vector>

#include "nfpt/tree_decomp.hpp"

namespace nfpt {

// Vertex set whose removal from every bag leaves residuals of size <= eta+1,
// i.e. width <= eta on the fixed decomposition.
struct Modulator {
    int eta = 0;
    std::vector<int> vertices;  // sorted ascending
};

bool verify_modulator(const TreeDecomposition& td, const Modulator& mod);

// Drop the vertex appearing in the most currently-violating bags (smallest id
// on ties) until no bag violates. Always feasible, not necessarily minimum.
Modulator modulator_greedy(const TreeDecomposition& td, int eta);

struct ModulatorExactResult {
    Modulator modulator;
    bool optimal = true;           // false when the node budget ran out
    long long nodes_expanded = 0;
};

// Minimum-cardinality modulator by branch-and-bound over the vertices of
// oversized bags, seeded with the greedy incumbent. Lower bound: total need
// of a greedily chosen disjoint set of violating bags. When the budget is
// exhausted the (still feasible) incumbent is returned with optimal=false.
ModulatorExactResult modulator_exact(const TreeDecomposition& td, int eta,
                                     long long node_budget = 10'000'000);

std::string to_line(const Modulator& mod);          // "eta v1 v2 ..."
Modulator modulator_from_line(const std::string& line);

}  // namespace nfpt
