#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "nfpt/graph.hpp"
#include "nfpt/modulator.hpp"
#include "nfpt/tdpa.hpp"

namespace nfpt {

// A request for a complete feasible assignment extending the partial one.
struct OracleCall {
    const Graph* graph = nullptr;
    ProblemKind kind = ProblemKind::Mis;
    Assignment partial;  // decided entries must be kept verbatim
    uint64_t seed = 0;
};

struct OracleResult {
    Assignment full;
};

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Oracle {
public:
    virtual ~Oracle() = default;
    virtual OracleResult produce(const OracleCall& call) = 0;
    virtual std::string name() const = 0;
};

// Seeded randomized greedy completion. MIS: random-order greedy independent
// set; MVC: complement of one, then redundant cover vertices pruned; Max-Cut:
// random sides plus one pass of improving flips.
OracleResult oracle_random_greedy(const OracleCall& call);

class RandomGreedyOracle final : public Oracle {
public:
    OracleResult produce(const OracleCall& call) override { return oracle_random_greedy(call); }
    std::string name() const override { return "greedy"; }
};

// Enumeration-backed optimum (n <= 26); test oracle for perfect-advice runs.
class PerfectOracle final : public Oracle {
public:
    OracleResult produce(const OracleCall& call) override;
    std::string name() const override { return "perfect"; }
};

// Child process speaking the line protocol on its standard streams:
//   handshake     child -> "NFPT-ORACLE 1"
//   request       "Q <kind> <n> <m> <seed> <partial> u1 v1 ... um vm"
//   reply         one line over {0,1}, length n
// Replies are validated (framing, extension of the partial, feasibility);
// violations raise OracleError and never propagate into the solver.
class ExternalOracle final : public Oracle {
public:
    explicit ExternalOracle(std::string command, double timeout_seconds = 30.0);
    ~ExternalOracle() override;

    ExternalOracle(const ExternalOracle&) = delete;
    ExternalOracle& operator=(const ExternalOracle&) = delete;

    OracleResult produce(const OracleCall& call) override;
    std::string name() const override { return "cmd:" + command_; }

private:
    void spawn();
    void shutdown();
    std::string read_line_with_timeout();

    std::string command_;
    double timeout_seconds_;
    std::mutex mutex_;  // one request in flight at a time
    int pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
};

// Advice = the oracle's selections restricted to the modulator.
AdviceString advice_from(const Assignment& full, const Modulator& mod);

// "greedy" | "perfect" | "cmd:<shell command>"
std::unique_ptr<Oracle> make_oracle(const std::string& selector, double timeout_seconds = 30.0);

}  // namespace nfpt
