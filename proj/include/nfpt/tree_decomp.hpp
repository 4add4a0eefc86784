#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nfpt/graph.hpp"

namespace nfpt {

// Tree decomposition: bags of graph vertices connected by tree edges. A valid
// decomposition covers every vertex, covers every edge inside some bag, and
// keeps each vertex's bags connected.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;           // each sorted ascending
    std::vector<std::pair<int, int>> tree_edges;  // undirected, between bag indices

    int num_bags() const { return (int)bags.size(); }
    int width() const;  // max bag size - 1; -1 for the empty decomposition
};

// Rooted view: parent pointers plus a bottom-up order (children before
// parents). When the underlying tree is a forest, a virtual empty root bag is
// appended and all component roots hang off it.
struct RootedTd {
    TreeDecomposition td;
    int root = -1;
    std::vector<int> parent;              // -1 at root
    std::vector<std::vector<int>> children;
    std::vector<int> depth;
    std::vector<int> order;               // bottom-up; ends at root
};

// Min-degree heuristic: repeatedly eliminate a minimum-degree vertex
// (smallest id on ties), make its neighborhood a clique with fill-in edges,
// and emit the bag {u} ∪ N(u). Once the residual graph is a clique, it is
// emitted as a single final bag. Fill-ins live in a working copy only.
TreeDecomposition min_degree_td(const Graph& g);

struct TdCheck {
    bool ok = true;
    std::string violated;  // "structure" | "union" | "edge" | "subtree"
};
TdCheck validate_td(const Graph& g, const TreeDecomposition& td);

// Removes bags that are subsets of an adjacent bag, reconnecting their other
// neighbors to the absorbing bag. Width and bag count never increase.
TreeDecomposition prune_bags(const TreeDecomposition& td);

RootedTd root_and_order(const TreeDecomposition& td, int root = 0);

// One line per bag: "t parent v1 v2 ..." with parent -1 at the root.
void write_td(std::ostream& out, const RootedTd& td);
RootedTd read_td(std::istream& in);

}  // namespace nfpt
