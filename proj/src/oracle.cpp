#include "nfpt/oracle.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>

#include "nfpt/exact.hpp"
#include "nfpt/rng.hpp"

namespace nfpt {

namespace {

void check_call(const OracleCall& call) {
    if (!call.graph) throw OracleError("oracle call has no graph");
    if ((int)call.partial.size() != call.graph->num_vertices())
        throw OracleError("oracle call partial has the wrong length");
}

}  // namespace

OracleResult oracle_random_greedy(const OracleCall& call) {
    check_call(call);
    const Graph& g = *call.graph;
    const int n = g.num_vertices();
    Rng rng(call.seed);
    Assignment a = call.partial;
    const std::vector<int> perm = rng.permutation(n);

    switch (call.kind) {
        case ProblemKind::Mis: {
            for (int v : perm) {
                if (a[v] != VertexState::Undecided) continue;
                bool blocked = false;
                for (int w : g.neighbors(v))
                    if (a[w] == VertexState::In) {
                        blocked = true;
                        break;
                    }
                a[v] = blocked ? VertexState::Out : VertexState::In;
            }
            break;
        }
        case ProblemKind::Mvc: {
            // complement of a greedy independent set; decided-Out vertices are
            // already outside the cover and act as the seed of that set
            std::vector<char> in_set(n, 0);
            for (int v = 0; v < n; ++v)
                if (a[v] == VertexState::Out) in_set[v] = 1;
            for (int v : perm) {
                if (a[v] != VertexState::Undecided) continue;
                bool blocked = false;
                for (int w : g.neighbors(v))
                    if (in_set[w]) {
                        blocked = true;
                        break;
                    }
                if (!blocked) in_set[v] = 1;
                a[v] = blocked ? VertexState::In : VertexState::Out;
            }
            // drop cover vertices whose edges are all covered from the other side
            for (int v : perm) {
                if (a[v] != VertexState::In || call.partial[v] == VertexState::In) continue;
                bool redundant = true;
                for (int w : g.neighbors(v))
                    if (a[w] != VertexState::In) {
                        redundant = false;
                        break;
                    }
                if (redundant) a[v] = VertexState::Out;
            }
            break;
        }
        case ProblemKind::MaxCut: {
            for (int v : perm)
                if (a[v] == VertexState::Undecided)
                    a[v] = rng.bernoulli(0.5) ? VertexState::In : VertexState::Out;
            // one pass of improving flips over the originally undecided vertices
            for (int v : perm) {
                if (call.partial[v] != VertexState::Undecided) continue;
                int same = 0, cross = 0;
                for (int w : g.neighbors(v))
                    (a[w] == a[v] ? same : cross) += 1;
                if (same > cross)
                    a[v] = a[v] == VertexState::In ? VertexState::Out : VertexState::In;
            }
            break;
        }
    }
    return {std::move(a)};
}

OracleResult PerfectOracle::produce(const OracleCall& call) {
    check_call(call);
    const Graph& g = *call.graph;
    const int n = g.num_vertices();
    if (n > 26) throw OracleError("perfect oracle refused beyond 26 vertices");

    // enumerate completions of the partial
    std::vector<int> open;
    uint32_t base = 0;
    for (int v = 0; v < n; ++v) {
        if (call.partial[v] == VertexState::Undecided) open.push_back(v);
        else if (call.partial[v] == VertexState::In) base |= 1u << v;
    }
    std::vector<uint32_t> adj(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u)) adj[u] |= 1u << v;

    const bool maximize = maximizing(call.kind);
    long long best = maximize ? -1 : (1ll << 40);
    uint32_t best_mask = 0;
    bool found = false;
    const uint32_t full = (uint32_t)((1ull << n) - 1);
    for (uint64_t pick = 0; pick < (1ull << open.size()); ++pick) {
        uint32_t mask = base;
        for (size_t i = 0; i < open.size(); ++i)
            if (pick >> i & 1) mask |= 1u << open[i];
        long long value;
        switch (call.kind) {
            case ProblemKind::Mis: {
                bool ok = true;
                for (uint32_t rest = mask; rest && ok; rest &= rest - 1)
                    if (adj[std::countr_zero(rest)] & mask) ok = false;
                if (!ok) continue;
                value = std::popcount(mask);
                break;
            }
            case ProblemKind::Mvc: {
                const uint32_t outside = full & ~mask;
                bool ok = true;
                for (uint32_t rest = outside; rest && ok; rest &= rest - 1)
                    if (adj[std::countr_zero(rest)] & outside) ok = false;
                if (!ok) continue;
                value = std::popcount(mask);
                break;
            }
            default: {
                value = 0;
                for (uint32_t rest = mask; rest; rest &= rest - 1)
                    value += std::popcount(adj[std::countr_zero(rest)] & full & ~mask);
                break;
            }
        }
        if (!found || (maximize ? value > best : value < best)) {
            found = true;
            best = value;
            best_mask = mask;
        }
    }
    if (!found) throw OracleError("partial state admits no feasible completion");
    Assignment a(n, VertexState::Out);
    for (int v = 0; v < n; ++v)
        if (best_mask >> v & 1) a[v] = VertexState::In;
    return {std::move(a)};
}

AdviceString advice_from(const Assignment& full, const Modulator& mod) {
    AdviceString advice;
    advice.vertices = mod.vertices;
    advice.take.reserve(mod.vertices.size());
    for (int v : mod.vertices) {
        if (v < 0 || v >= (int)full.size() || full[v] == VertexState::Undecided)
            throw std::invalid_argument("assignment does not decide a modulator vertex");
        advice.take.push_back(full[v] == VertexState::In ? 1 : 0);
    }
    return advice;
}

// ---- external oracle ----

ExternalOracle::ExternalOracle(std::string command, double timeout_seconds)
    : command_(std::move(command)), timeout_seconds_(timeout_seconds) {}

ExternalOracle::~ExternalOracle() { shutdown(); }

void ExternalOracle::spawn() {
    signal(SIGPIPE, SIG_IGN);
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
        throw OracleError("cannot create oracle pipes");
    const int pid = fork();
    if (pid < 0) throw OracleError("cannot fork oracle process");
    if (pid == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", command_.c_str(), (char*)nullptr);
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    pid_ = pid;
    to_child_ = to_child[1];
    from_child_ = from_child[0];
    buffer_.clear();

    const std::string hello = read_line_with_timeout();
    if (hello != "NFPT-ORACLE 1") {
        shutdown();
        throw OracleError("bad handshake: \"" + hello + "\"");
    }
}

void ExternalOracle::shutdown() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
        kill(pid_, SIGTERM);
        int status = 0;
        waitpid(pid_, &status, 0);
        pid_ = -1;
    }
}

std::string ExternalOracle::read_line_with_timeout() {
    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds_);
    while (true) {
        const size_t nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return line;
        }
        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            shutdown();
            throw OracleError("oracle timed out");
        }
        const auto remaining =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
        pollfd pfd{from_child_, POLLIN, 0};
        const int rc = poll(&pfd, 1, (int)std::max<long long>(1, remaining.count()));
        if (rc < 0) {
            if (errno == EINTR) continue;
            shutdown();
            throw OracleError("oracle pipe poll failed");
        }
        if (rc == 0) continue;
        char chunk[4096];
        const ssize_t got = read(from_child_, chunk, sizeof chunk);
        if (got <= 0) {
            shutdown();
            throw OracleError("oracle closed its output");
        }
        buffer_.append(chunk, (size_t)got);
    }
}

OracleResult ExternalOracle::produce(const OracleCall& call) {
    check_call(call);
    std::lock_guard<std::mutex> lock(mutex_);
    if (pid_ < 0) spawn();

    const Graph& g = *call.graph;
    std::ostringstream req;
    req << "Q " << problem_name(call.kind) << ' ' << g.num_vertices() << ' ' << g.num_edges()
        << ' ' << call.seed << ' ' << to_string(call.partial);
    auto us = g.edge_us();
    auto vs = g.edge_vs();
    for (size_t i = 0; i < us.size(); ++i) req << ' ' << us[i] << ' ' << vs[i];
    req << '\n';
    const std::string line = req.str();

    size_t written = 0;
    while (written < line.size()) {
        const ssize_t w = write(to_child_, line.data() + written, line.size() - written);
        if (w <= 0) {
            shutdown();
            throw OracleError("oracle closed its input");
        }
        written += (size_t)w;
    }

    const std::string reply = read_line_with_timeout();
    if ((int)reply.size() != g.num_vertices())
        throw OracleError("reply has the wrong length");
    Assignment full(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (reply[v] == '0') full[v] = VertexState::Out;
        else if (reply[v] == '1') full[v] = VertexState::In;
        else if (reply[v] == '?')
            throw OracleError("reply leaves vertices undecided");
        else
            throw OracleError("reply contains characters outside {0,1}");
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (call.partial[v] != VertexState::Undecided && full[v] != call.partial[v])
            throw OracleError("reply overwrites a decided vertex");
    if (!is_feasible(g, call.kind, full)) throw OracleError("reply is infeasible");
    return {std::move(full)};
}

std::unique_ptr<Oracle> make_oracle(const std::string& selector, double timeout_seconds) {
    if (selector == "greedy") return std::make_unique<RandomGreedyOracle>();
    if (selector == "perfect") return std::make_unique<PerfectOracle>();
    if (selector.rfind("cmd:", 0) == 0)
        return std::make_unique<ExternalOracle>(selector.substr(4), timeout_seconds);
    throw OracleError("unknown oracle selector: " + selector);
}

}  // namespace nfpt
