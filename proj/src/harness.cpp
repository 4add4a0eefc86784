#include "nfpt/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "nfpt/exact.hpp"
#include "nfpt/rng.hpp"
#include "nfpt/tdpa.hpp"

namespace fs = std::filesystem;

namespace nfpt {

const char* method_name(Method m) {
    switch (m) {
        case Method::Oracle: return "oracle";
        case Method::Tdpa: return "tdpa";
        case Method::Icl: return "icl";
        case Method::It: return "it";
        case Method::Rd: return "rd";
        case Method::Rt: return "rt";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view s) {
    if (s == "oracle") return Method::Oracle;
    if (s == "tdpa") return Method::Tdpa;
    if (s == "icl") return Method::Icl;
    if (s == "it") return Method::It;
    if (s == "rd") return Method::Rd;
    if (s == "rt") return Method::Rt;
    return std::nullopt;
}

int default_eta(ProblemKind kind) { return kind == ProblemKind::MaxCut ? 6 : 10; }

double gap_percent(ProblemKind kind, double x, double opt) {
    if (opt == 0.0) return x == 0.0 ? 0.0 : 100.0;
    return maximizing(kind) ? 100.0 * (1.0 - x / opt) : 100.0 * (x / opt - 1.0);
}

void make_dataset(const GenSpec& spec, int count, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::ofstream manifest(fs::path(out_dir) / "manifest.tsv");
    if (!manifest) throw ConfigError("cannot write manifest in " + out_dir);
    manifest << "# file\tseed\tn\tm\n";
    for (int i = 0; i < count; ++i) {
        GenSpec inst = spec;
        inst.seed = mix_seed(spec.seed, (uint64_t)i);
        const Graph g = generate(inst);
        char name[32];
        std::snprintf(name, sizeof name, "g_%05d.txt", i);
        write_edge_list_file((fs::path(out_dir) / name).string(), g);
        manifest << name << '\t' << inst.seed << '\t' << g.num_vertices() << '\t' << g.num_edges()
                 << '\n';
    }
}

std::vector<std::string> load_dataset(const std::string& dir) {
    std::vector<std::string> files;
    const fs::path manifest_path = fs::path(dir) / "manifest.tsv";
    if (fs::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const size_t tab = line.find('\t');
            files.push_back((fs::path(dir) / line.substr(0, tab)).string());
        }
        return files;
    }
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".txt") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

namespace {

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

bool wants(const ExperimentConfig& cfg, Method m) {
    return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end();
}

// per-instance, per-method value pools
struct InstanceValues {
    std::vector<long long> runs;   // one value per run (oracle/tdpa/icl/it)
    long long chain_best = 0;      // rd/rt: best within the single best-of chain
    bool has_chain = false;
};

struct InstanceOutcome {
    InstanceInfo info;
    // indexed by Method
    std::array<InstanceValues, 6> values;
    double neural_seconds = 0, tdpa_seconds = 0;
    std::string error;
};

int resolve_threads(const ExperimentConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("NFPT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (int)hw;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult result;
    if (cfg.seeds < 1 || cfg.bestof < 1) throw ConfigError("seeds and bestof must be >= 1");

    // resolve the instance list
    std::vector<std::string> names;
    std::vector<Graph> graphs;
    if (!cfg.dataset_files.empty()) {
        for (const auto& f : cfg.dataset_files) {
            graphs.push_back(parse_edge_list_file(f));
            names.push_back(fs::path(f).filename().string());
        }
    } else if (cfg.inline_spec) {
        for (int i = 0; i < cfg.inline_count; ++i) {
            GenSpec inst = *cfg.inline_spec;
            inst.seed = mix_seed(cfg.inline_spec->seed, (uint64_t)i);
            graphs.push_back(generate(inst));
            names.push_back("gen_" + std::to_string(i));
        }
    }
    const int instance_count = (int)graphs.size();
    if (cfg.methods.empty() || instance_count == 0) {
        // an empty method list (or dataset) produces an empty table
        return result;
    }

    const int eta = cfg.eta >= 0 ? cfg.eta : default_eta(cfg.kind);
    const int runs = std::max(cfg.seeds, cfg.bestof);
    const int rd_rounds = cfg.rd.rounds > 0 ? cfg.rd.rounds : cfg.bestof;
    const bool maximize = maximizing(cfg.kind);

    const bool need_base = wants(cfg, Method::Oracle) || wants(cfg, Method::Tdpa);
    const bool need_icl = wants(cfg, Method::Icl) || wants(cfg, Method::It);
    const bool need_rd = wants(cfg, Method::Rd) || wants(cfg, Method::Rt);

    std::vector<InstanceOutcome> outcomes(instance_count);
    std::atomic<int> next{0};
    // one external process shared by all workers (it serializes requests);
    // built-in oracles are pure and cloned per worker
    std::unique_ptr<Oracle> shared_oracle = make_oracle(cfg.oracle, cfg.oracle_timeout_s);
    const bool oracle_is_shared = cfg.oracle.rfind("cmd:", 0) == 0;

    auto worker = [&] {
        // built-in oracles are pure; give each worker its own instance to
        // avoid needless contention
        std::unique_ptr<Oracle> local_oracle;
        if (!oracle_is_shared) local_oracle = make_oracle(cfg.oracle, cfg.oracle_timeout_s);
        Oracle& oracle = oracle_is_shared ? *shared_oracle : *local_oracle;

        while (true) {
            const int i = next.fetch_add(1);
            if (i >= instance_count) break;
            InstanceOutcome& out = outcomes[i];
            const Graph& g = graphs[i];
            out.info.name = names[i];
            out.info.n = g.num_vertices();
            out.info.m = g.num_edges();
            try {
                const TreeDecomposition td = prune_bags(min_degree_td(g));
                out.info.width = td.width();
                const RootedTd rooted = root_and_order(td);

                Modulator mod;
                if (cfg.modulator_mode == "greedy") {
                    mod = modulator_greedy(td, eta);
                } else if (cfg.modulator_mode == "exact") {
                    mod = modulator_exact(td, eta, cfg.modulator_budget).modulator;
                } else {
                    // auto: exact is cheap while the candidate set is small
                    const Modulator greedy = modulator_greedy(td, eta);
                    if ((int)greedy.vertices.size() <= 30)
                        mod = modulator_exact(td, eta, cfg.modulator_budget).modulator;
                    else
                        mod = greedy;
                }
                out.info.modulator_size = (int)mod.vertices.size();

                auto solve_advice = [&](const AdviceString& advice) {
                    const Clock clock;
                    const long long value = tdpa_solve(g, rooted, mod, advice, cfg.kind).value;
                    out.tdpa_seconds += clock.seconds();
                    return value;
                };

                for (int r = 0; r < runs; ++r) {
                    const uint64_t run_seed = mix_seed(cfg.master_seed, (uint64_t)i, (uint64_t)r);
                    if (need_base) {
                        const Clock clock;
                        OracleCall call{&g, cfg.kind, Assignment(g.num_vertices()), mix_seed(run_seed, 0)};
                        const Assignment traj = oracle.produce(call).full;
                        out.neural_seconds += clock.seconds();
                        out.values[(int)Method::Oracle].runs.push_back(evaluate(g, cfg.kind, traj));
                        if (wants(cfg, Method::Tdpa))
                            out.values[(int)Method::Tdpa].runs.push_back(
                                solve_advice(advice_from(traj, mod)));
                    }
                    if (need_icl) {
                        const Clock clock;
                        const IclOutcome icl =
                            icl_run(oracle, g, cfg.kind, mod, cfg.icl, mix_seed(run_seed, 1));
                        out.neural_seconds += clock.seconds();
                        out.values[(int)Method::Icl].runs.push_back(
                            evaluate(g, cfg.kind, icl.completion));
                        if (wants(cfg, Method::It))
                            out.values[(int)Method::It].runs.push_back(solve_advice(icl.advice));
                    }
                    if (need_rd && r < cfg.seeds) {
                        const Clock clock;
                        const RdParams rd{cfg.rd.rho, rd_rounds};
                        const auto rounds =
                            rd_run(oracle, g, cfg.kind, mod, rd, mix_seed(run_seed, 2));
                        out.neural_seconds += clock.seconds();
                        long long best_traj = 0, best_dp = 0;
                        bool first = true;
                        for (const auto& round : rounds) {
                            const long long traj_value = evaluate(g, cfg.kind, round.trajectory);
                            const long long dp_value =
                                wants(cfg, Method::Rt) ? solve_advice(round.advice) : 0;
                            if (first || (maximize ? traj_value > best_traj : traj_value < best_traj))
                                best_traj = traj_value;
                            if (first || (maximize ? dp_value > best_dp : dp_value < best_dp))
                                best_dp = dp_value;
                            first = false;
                        }
                        out.values[(int)Method::Rd].runs.push_back(best_traj);
                        out.values[(int)Method::Rt].runs.push_back(best_dp);
                        if (r == 0) {
                            out.values[(int)Method::Rd].chain_best = best_traj;
                            out.values[(int)Method::Rd].has_chain = true;
                            out.values[(int)Method::Rt].chain_best = best_dp;
                            out.values[(int)Method::Rt].has_chain = true;
                        }
                    }
                }

                // reference optimum; the method pool backs it up on wide instances
                std::optional<long long> best_known;
                for (int m = 0; m < 6; ++m)
                    for (const long long v : out.values[m].runs)
                        if (!best_known || (maximize ? v > *best_known : v < *best_known))
                            best_known = v;
                const Reference ref = reference_opt(g, cfg.kind, cfg.reference_width, best_known);
                out.info.opt = ref.value;
                out.info.opt_exact = ref.exact;
            } catch (const std::exception& e) {
                out.info.failed = true;
                out.error = e.what();
            }
        }
    };

    const int threads = std::min(resolve_threads(cfg), instance_count);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& out : outcomes) result.instances.push_back(out.info);

    // aggregate
    for (const Method m : cfg.methods) {
        MetricRow row;
        row.method = method_name(m);
        double sum_avg = 0, sum_best = 0, sum_avg_gap = 0, sum_best_gap = 0;
        int counted = 0;
        for (const auto& out : outcomes) {
            if (out.info.failed) {
                ++row.failures;
                continue;
            }
            const auto& vals = out.values[(int)m];
            if (vals.runs.empty()) continue;
            double avg = 0;
            const int avg_n = std::min<int>(cfg.seeds, (int)vals.runs.size());
            for (int r = 0; r < avg_n; ++r) avg += (double)vals.runs[r];
            avg /= avg_n;

            double best;
            if (m == Method::Rd || m == Method::Rt) {
                // one deferral chain of bestof-many rounds is the best-of pool
                best = (double)(vals.has_chain ? vals.chain_best : vals.runs.front());
            } else {
                const int best_n = std::min<int>(cfg.bestof, (int)vals.runs.size());
                best = (double)vals.runs[0];
                for (int r = 1; r < best_n; ++r) {
                    const double v = (double)vals.runs[r];
                    if (maximize ? v > best : v < best) best = v;
                }
            }

            const double avg_gap = gap_percent(cfg.kind, avg, (double)out.info.opt);
            const double best_gap = gap_percent(cfg.kind, best, (double)out.info.opt);
            row.inst_avg.push_back(avg);
            row.inst_best.push_back(best);
            row.inst_avg_gap.push_back(avg_gap);
            row.inst_best_gap.push_back(best_gap);
            row.neural_seconds += out.neural_seconds;
            row.tdpa_seconds += out.tdpa_seconds;
            sum_avg += avg;
            sum_best += best;
            sum_avg_gap += avg_gap;
            sum_best_gap += best_gap;
            ++counted;
        }
        row.instances = counted;
        if (counted > 0) {
            row.avg_size = sum_avg / counted;
            row.best_size = sum_best / counted;
            row.avg_gap_pct = sum_avg_gap / counted;
            row.best_gap_pct = sum_best_gap / counted;
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::optional<ReportFormat> parse_format(std::string_view s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "text") return ReportFormat::Text;
    return std::nullopt;
}

namespace {

std::string two(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

void emit_report(std::ostream& out, const std::vector<MetricRow>& rows, ReportFormat fmt) {
    if (fmt == ReportFormat::Csv) {
        out << "method,avg_size,avg_gap_pct,best_size,best_gap_pct,neural_s,tdpa_s,instances,failures\n";
        for (const auto& r : rows)
            out << r.method << ',' << two(r.avg_size) << ',' << two(r.avg_gap_pct) << ','
                << two(r.best_size) << ',' << two(r.best_gap_pct) << ',' << two(r.neural_seconds)
                << ',' << two(r.tdpa_seconds) << ',' << r.instances << ',' << r.failures << '\n';
        return;
    }
    char line[256];
    std::snprintf(line, sizeof line, "%-10s %-10s %10s %10s\n", "", "Method", "Size", "Gap%");
    out << line;
    auto block = [&](const char* label, bool best) {
        bool first = true;
        for (const auto& r : rows) {
            std::snprintf(line, sizeof line, "%-10s %-10s %10s %10s\n", first ? label : "",
                          r.method.c_str(), two(best ? r.best_size : r.avg_size).c_str(),
                          two(best ? r.best_gap_pct : r.avg_gap_pct).c_str());
            out << line;
            first = false;
        }
    };
    block("Avg.", false);
    block("BestOfN", true);
    out << '\n';
    std::snprintf(line, sizeof line, "%-10s %-10s %10s %10s\n", "", "Method", "Neural(s)", "Tdpa(s)");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-10s %-10s %10s %10s\n", "", r.method.c_str(),
                      two(r.neural_seconds).c_str(), two(r.tdpa_seconds).c_str());
        out << line;
    }
}

std::vector<MetricRow> parse_csv_report(std::istream& in) {
    std::vector<MetricRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ls(line);
        std::string field;
        MetricRow r;
        auto next = [&] {
            if (!std::getline(ls, field, ',')) throw ParseError("short report row");
            return field;
        };
        r.method = next();
        r.avg_size = std::stod(next());
        r.avg_gap_pct = std::stod(next());
        r.best_size = std::stod(next());
        r.best_gap_pct = std::stod(next());
        r.neural_seconds = std::stod(next());
        r.tdpa_seconds = std::stod(next());
        r.instances = std::stoi(next());
        r.failures = std::stoi(next());
        rows.push_back(std::move(r));
    }
    return rows;
}

std::map<std::string, std::string> parse_config_text(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) + " is not key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const size_t b = s.find_first_not_of(" \t\r");
            const size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    return parse_config_text(in);
}

void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv) {
    auto to_int = [](const std::string& key, const std::string& v) {
        try {
            return std::stoi(v);
        } catch (...) {
            throw ConfigError("bad integer for " + key);
        }
    };
    auto to_double = [](const std::string& key, const std::string& v) {
        try {
            return std::stod(v);
        } catch (...) {
            throw ConfigError("bad number for " + key);
        }
    };
    GenSpec spec = cfg.inline_spec.value_or(GenSpec{});
    bool touched_spec = false;

    for (const auto& [key, value] : kv) {
        if (key == "problem") {
            const auto kind = parse_problem(value);
            if (!kind) throw ConfigError("unknown problem: " + value);
            cfg.kind = *kind;
        } else if (key == "eta") {
            cfg.eta = to_int(key, value);
        } else if (key == "seeds") {
            cfg.seeds = to_int(key, value);
        } else if (key == "bestof") {
            cfg.bestof = to_int(key, value);
        } else if (key == "oracle") {
            cfg.oracle = value;
        } else if (key == "oracle.timeout") {
            cfg.oracle_timeout_s = to_double(key, value);
        } else if (key == "icl.k") {
            cfg.icl.k = to_int(key, value);
        } else if (key == "icl.kappa") {
            cfg.icl.kappa = to_int(key, value);
        } else if (key == "icl.max_rounds") {
            cfg.icl.max_rounds = to_int(key, value);
        } else if (key == "rd.rho") {
            cfg.rd.rho = to_double(key, value);
        } else if (key == "rd.rounds") {
            cfg.rd.rounds = to_int(key, value);
        } else if (key == "methods") {
            cfg.methods.clear();
            std::istringstream ms(value);
            std::string tok;
            while (std::getline(ms, tok, ',')) {
                if (tok.empty()) continue;
                const auto m = parse_method(tok);
                if (!m) throw ConfigError("unknown method: " + tok);
                cfg.methods.push_back(*m);
            }
        } else if (key == "modulator") {
            if (value != "auto" && value != "exact" && value != "greedy")
                throw ConfigError("modulator must be auto, exact or greedy");
            cfg.modulator_mode = value;
        } else if (key == "modulator.budget") {
            cfg.modulator_budget = std::stoll(value);
        } else if (key == "reference.width") {
            cfg.reference_width = to_int(key, value);
        } else if (key == "threads") {
            cfg.threads = to_int(key, value);
        } else if (key == "seed") {
            cfg.master_seed = std::stoull(value);
        } else if (key == "dataset.dir") {
            cfg.dataset_files = load_dataset(value);
        } else if (key == "dataset.profile") {
            const auto p = profile_spec(value);
            if (!p) throw ConfigError("unknown profile: " + value);
            const uint64_t keep_seed = spec.seed;
            spec = *p;
            spec.seed = keep_seed;
            touched_spec = true;
        } else if (key == "dataset.count") {
            cfg.inline_count = to_int(key, value);
        } else if (key == "dataset.seed") {
            spec.seed = std::stoull(value);
            touched_spec = true;
        } else if (key == "dataset.family") {
            const auto f = parse_family(value);
            if (!f) throw ConfigError("unknown family: " + value);
            spec.family = *f;
            touched_spec = true;
        } else if (key == "dataset.n_min") {
            spec.n_min = to_int(key, value);
            touched_spec = true;
        } else if (key == "dataset.n_max") {
            spec.n_max = to_int(key, value);
            touched_spec = true;
        } else if (key == "dataset.er_p") {
            spec.er_p = to_double(key, value);
            touched_spec = true;
        } else if (key == "dataset.ba_m") {
            spec.ba_m = to_int(key, value);
            touched_spec = true;
        } else if (key == "dataset.ws_k") {
            spec.ws_k = to_int(key, value);
            touched_spec = true;
        } else if (key == "dataset.ws_p") {
            spec.ws_p = to_double(key, value);
            touched_spec = true;
        } else if (key == "dataset.rr_d") {
            spec.rr_d = to_int(key, value);
            touched_spec = true;
        } else if (key == "dataset.hk_m_min") {
            spec.hk_m_min = to_int(key, value);
            touched_spec = true;
        } else if (key == "dataset.hk_m_max") {
            spec.hk_m_max = to_int(key, value);
            touched_spec = true;
        } else if (key == "dataset.hk_p") {
            spec.hk_p = to_double(key, value);
            touched_spec = true;
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    if (touched_spec) cfg.inline_spec = spec;
}

}  // namespace nfpt
