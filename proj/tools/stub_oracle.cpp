// Reference oracle process for protocol conformance testing. Speaks the
// stdio line protocol; --mode selects deliberately broken behaviors so the
// client's validation paths can be exercised.
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nfpt/graph.hpp"
#include "nfpt/oracle.hpp"

using namespace nfpt;

namespace {

struct Request {
    ProblemKind kind;
    int n;
    long long m;
    uint64_t seed;
    Assignment partial;
    std::vector<std::pair<int, int>> edges;
};

bool read_request(const std::string& line, Request& req) {
    std::istringstream in(line);
    std::string tag, kind_str, partial_str;
    if (!(in >> tag) || tag != "Q") return false;
    if (!(in >> kind_str >> req.n >> req.m >> req.seed >> partial_str)) return false;
    const auto kind = parse_problem(kind_str);
    if (!kind || (int)partial_str.size() != req.n) return false;
    req.kind = *kind;
    req.partial = assignment_from_string(partial_str);
    req.edges.clear();
    for (long long i = 0; i < req.m; ++i) {
        int u, v;
        if (!(in >> u >> v)) return false;
        req.edges.emplace_back(u, v);
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::string mode = "ok";
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind("--mode=", 0) == 0) mode = arg.substr(7);
        else if (arg == "--mode" && i + 1 < argc) mode = argv[++i];
    }

    if (mode == "badversion") std::cout << "NFPT-ORACLE 999\n";
    else std::cout << "NFPT-ORACLE 1\n";
    std::cout.flush();

    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        Request req;
        if (!read_request(line, req)) {
            std::cout << "\n";
            std::cout.flush();
            continue;
        }
        const Graph g(req.n, req.edges);

        std::string reply;
        if (mode == "allout") {
            reply.assign(req.n, '0');
        } else if (mode == "infeasible") {
            // deliberately violate the problem constraints
            reply.assign(req.n, '0');
            if (req.kind == ProblemKind::Mis && g.num_edges() > 0) {
                reply[g.edge_us()[0]] = '1';
                reply[g.edge_vs()[0]] = '1';
            }
            // for MVC the all-out string is already an uncovered reply
        } else if (mode == "incomplete") {
            OracleCall call{&g, req.kind, req.partial, req.seed};
            reply = to_string(oracle_random_greedy(call).full);
            if (!reply.empty()) reply[0] = '?';
        } else if (mode == "badframe") {
            reply = "xy";
        } else {
            OracleCall call{&g, req.kind, req.partial, req.seed};
            reply = to_string(oracle_random_greedy(call).full);
        }
        std::cout << reply << "\n";
        std::cout.flush();
    }
    return 0;
}
