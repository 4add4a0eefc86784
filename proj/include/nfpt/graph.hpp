#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nfpt {

enum class ProblemKind { Mis, Mvc, MaxCut };

// MVC is the one minimization objective; MIS and Max-Cut maximize.
inline bool maximizing(ProblemKind k) { return k != ProblemKind::Mvc; }

const char* problem_name(ProblemKind k);
std::optional<ProblemKind> parse_problem(std::string_view s);

// Ternary vertex state: undecided / excluded / included.
enum class VertexState : uint8_t { Undecided = 0, Out = 1, In = 2 };

using Assignment = std::vector<VertexState>;

bool is_complete(const Assignment& a);
std::string to_string(const Assignment& a);                  // over {?,0,1}
Assignment assignment_from_string(std::string_view s);       // inverse, throws on bad chars

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what, int line = -1)
        : std::runtime_error(what), line(line) {}
    int line;
};

// Undirected simple graph over vertex ids {0..n-1}. No self-loops, no
// duplicate edges; adjacency lists sorted; edge arrays sorted with u < v.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int num_vertices() const { return n_; }
    long long num_edges() const { return (long long)edge_u_.size(); }

    std::span<const int> neighbors(int u) const {
        return {adj_.data() + adj_offset_[u], adj_.data() + adj_offset_[u + 1]};
    }
    int degree(int u) const { return adj_offset_[u + 1] - adj_offset_[u]; }
    bool has_edge(int u, int v) const;

    // Parallel edge arrays with edge_us()[i] < edge_vs()[i].
    std::span<const uint32_t> edge_us() const { return edge_u_; }
    std::span<const uint32_t> edge_vs() const { return edge_v_; }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edge_u_ == other.edge_u_ && edge_v_ == other.edge_v_;
    }

private:
    int n_ = 0;
    std::vector<uint32_t> edge_u_, edge_v_;
    std::vector<int> adj_offset_{0};
    std::vector<int> adj_;
};

struct NormalizeResult {
    Graph graph;
    std::vector<int> old_to_new;  // -1 for dropped (isolated) vertices
};

// Drops self-loops and duplicate edges, removes isolated vertices, relabels
// the survivors to consecutive ids preserving order.
NormalizeResult normalize(int raw_vertex_count, std::span<const std::pair<int, int>> raw_edges);

// Text edge list: one "u v" pair per line, '#' lines ignored. The result is
// normalized.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

// Objective value of a complete assignment: |S| for MIS/MVC, cut size for
// Max-Cut. Throws std::invalid_argument on incomplete assignments.
long long evaluate(const Graph& g, ProblemKind kind, const Assignment& a);

// MIS: S independent; MVC: S covers every edge; Max-Cut: always feasible.
bool is_feasible(const Graph& g, ProblemKind kind, const Assignment& a);

}  // namespace nfpt
