#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nfpt/gen.hpp"
#include "nfpt/graph.hpp"
#include "nfpt/meta.hpp"
#include "nfpt/oracle.hpp"

namespace nfpt {

enum class Method { Oracle, Tdpa, Icl, It, Rd, Rt };

const char* method_name(Method m);
std::optional<Method> parse_method(std::string_view s);

// Per-problem modulator target width: 10 for MIS and MVC, 6 for Max-Cut.
int default_eta(ProblemKind kind);

struct ExperimentConfig {
    // Dataset: either explicit edge-list files or an inline generation spec.
    std::vector<std::string> dataset_files;
    std::optional<GenSpec> inline_spec;
    int inline_count = 0;

    ProblemKind kind = ProblemKind::Mis;
    int eta = -1;  // <0 picks the per-problem default
    std::vector<Method> methods = {Method::Oracle, Method::Tdpa, Method::Icl,
                                   Method::It,     Method::Rd,   Method::Rt};
    int seeds = 20;
    int bestof = 20;
    std::string oracle = "greedy";
    double oracle_timeout_s = 30.0;
    IclParams icl;
    RdParams rd{0.25, 0};            // rounds <= 0 means bestof
    std::string modulator_mode = "auto";  // auto | exact | greedy
    long long modulator_budget = 10'000'000;
    int reference_width = 18;
    int threads = 0;                 // 0: NFPT_THREADS env, else hardware
    uint64_t master_seed = 1;
};

struct MetricRow {
    std::string method;
    double avg_size = 0, avg_gap_pct = 0;
    double best_size = 0, best_gap_pct = 0;
    double neural_seconds = 0, tdpa_seconds = 0;  // totals over the dataset
    int instances = 0;
    int failures = 0;

    // per-instance values backing the aggregates (indexed like instances)
    std::vector<double> inst_avg, inst_best;
    std::vector<double> inst_avg_gap, inst_best_gap;
};

struct InstanceInfo {
    std::string name;
    int n = 0;
    long long m = 0;
    int width = 0;
    int modulator_size = 0;
    long long opt = 0;
    bool opt_exact = false;
    bool failed = false;
};

struct ExperimentResult {
    std::vector<MetricRow> rows;          // one per requested method
    std::vector<InstanceInfo> instances;
};

// Writes `count` edge-list files <out_dir>/g_00000.txt ... plus manifest.tsv
// recording per-instance seed and realized (n, m). Deterministic per spec.
void make_dataset(const GenSpec& spec, int count, const std::string& out_dir);

// Files listed in manifest.tsv if present, otherwise *.txt sorted by name.
std::vector<std::string> load_dataset(const std::string& dir);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

enum class ReportFormat { Csv, Text };
std::optional<ReportFormat> parse_format(std::string_view s);

void emit_report(std::ostream& out, const std::vector<MetricRow>& rows, ReportFormat fmt);
std::vector<MetricRow> parse_csv_report(std::istream& in);

// Flat "key = value" config files; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(std::istream& in);
std::map<std::string, std::string> parse_config_file(const std::string& path);
// Applies recognized keys onto cfg; throws ConfigError on unknown keys or bad
// values. Recognized keys are documented in the README.
void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv);

// Optimality gap in percent: 100*(1 - x/opt) when maximizing,
// 100*(x/opt - 1) when minimizing.
double gap_percent(ProblemKind kind, double x, double opt);

}  // namespace nfpt
