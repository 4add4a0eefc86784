#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nfpt/exact.hpp"
#include "nfpt/harness.hpp"
#include "nfpt/meta.hpp"
#include "nfpt/oracle.hpp"
#include "nfpt/rng.hpp"
#include "nfpt/tdpa.hpp"

namespace fs = std::filesystem;
using namespace nfpt;

namespace {

ProblemKind problem_or_die(const std::string& s) {
    const auto kind = parse_problem(s);
    if (!kind) throw CLI::ValidationError("--problem", "expected mis, mvc or maxcut");
    return *kind;
}

struct GenArgs {
    std::string profile, family, out_dir;
    int n_min = 0, n_max = 0, count = 100;
    uint64_t seed = 1;
    double er_p = -1, ws_p = -1, hk_p = -1;
    int ba_m = -1, ws_k = -1, rr_d = -1, hk_m_min = -1, hk_m_max = -1;
};

GenSpec resolve_gen_spec(const GenArgs& a) {
    GenSpec spec;
    if (!a.profile.empty()) {
        const auto p = profile_spec(a.profile);
        if (!p) throw CLI::ValidationError("--profile", "unknown profile " + a.profile);
        spec = *p;
    }
    if (!a.family.empty()) {
        const auto f = parse_family(a.family);
        if (!f) throw CLI::ValidationError("--family", "unknown family " + a.family);
        spec.family = *f;
    }
    if (a.n_min > 0) spec.n_min = a.n_min;
    if (a.n_max > 0) spec.n_max = a.n_max;
    if (a.er_p >= 0) spec.er_p = a.er_p;
    if (a.ws_p >= 0) spec.ws_p = a.ws_p;
    if (a.hk_p >= 0) spec.hk_p = a.hk_p;
    if (a.ba_m >= 0) spec.ba_m = a.ba_m;
    if (a.ws_k >= 0) spec.ws_k = a.ws_k;
    if (a.rr_d >= 0) spec.rr_d = a.rr_d;
    if (a.hk_m_min >= 0) spec.hk_m_min = a.hk_m_min;
    if (a.hk_m_max >= 0) spec.hk_m_max = a.hk_m_max;
    spec.seed = a.seed;
    return spec;
}

int run_oracle_check(const std::string& stub, const std::string& oracle_cmd, double timeout) {
    Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    int failures = 0;
    auto report = [&](const std::string& what, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "ok      " : "FAILED  ") << what;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    auto accepts = [&](const std::string& cmd, ProblemKind kind) -> std::string {
        try {
            ExternalOracle oracle(cmd, timeout);
            OracleCall call{&g, kind, Assignment(g.num_vertices(), VertexState::Undecided), 7};
            const OracleResult res = oracle.produce(call);
            if (!is_feasible(g, kind, res.full)) return "accepted an infeasible reply";
            return "";
        } catch (const OracleError& e) {
            return e.what();
        }
    };
    auto rejects = [&](const std::string& cmd, ProblemKind kind) -> std::string {
        try {
            ExternalOracle oracle(cmd, timeout);
            OracleCall call{&g, kind, Assignment(g.num_vertices(), VertexState::Undecided), 7};
            oracle.produce(call);
            return "reply was accepted";
        } catch (const OracleError&) {
            return "";
        }
    };

    if (!oracle_cmd.empty()) {
        const std::string err = accepts(oracle_cmd, ProblemKind::Mis);
        report("handshake + valid reply accepted", err.empty(), err);
        return failures == 0 ? 0 : 1;
    }

    const std::string base = stub;
    std::string err = accepts(base + " --mode=ok", ProblemKind::Mis);
    report("handshake + greedy reply accepted", err.empty(), err);
    err = accepts(base + " --mode=allout", ProblemKind::Mis);
    report("all-out reply accepted for mis", err.empty(), err);
    err = rejects(base + " --mode=badversion", ProblemKind::Mis);
    report("wrong handshake rejected", err.empty(), err);
    err = rejects(base + " --mode=infeasible", ProblemKind::Mis);
    report("infeasible reply rejected", err.empty(), err);
    err = rejects(base + " --mode=incomplete", ProblemKind::Mis);
    report("incomplete reply rejected", err.empty(), err);
    err = rejects(base + " --mode=badframe", ProblemKind::Mis);
    report("misframed reply rejected", err.empty(), err);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neural-advice FPT solver toolkit"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen_cmd = app.add_subcommand("gen", "generate a random-graph dataset");
    GenArgs gen_args;
    gen_cmd->add_option("--profile", gen_args.profile, "named profile (er_ss .. hk_ld, desk_*)");
    gen_cmd->add_option("--family", gen_args.family, "er|ba|ws|rr|hk");
    gen_cmd->add_option("--n-min", gen_args.n_min);
    gen_cmd->add_option("--n-max", gen_args.n_max);
    gen_cmd->add_option("--p", gen_args.er_p, "ER edge probability");
    gen_cmd->add_option("--m", gen_args.ba_m, "BA attachments per vertex");
    gen_cmd->add_option("--k", gen_args.ws_k, "WS ring neighbors");
    gen_cmd->add_option("--ws-p", gen_args.ws_p, "WS rewiring probability");
    gen_cmd->add_option("--d", gen_args.rr_d, "regular degree");
    gen_cmd->add_option("--m-min", gen_args.hk_m_min, "HK attachment range low");
    gen_cmd->add_option("--m-max", gen_args.hk_m_max, "HK attachment range high");
    gen_cmd->add_option("--hk-p", gen_args.hk_p, "HK triangle probability");
    gen_cmd->add_option("--count", gen_args.count);
    gen_cmd->add_option("--seed", gen_args.seed);
    gen_cmd->add_option("--out", gen_args.out_dir)->required();

    // ---- decompose ----
    auto* dec_cmd = app.add_subcommand("decompose", "tree decomposition + modulator inspection");
    std::string dec_input, dec_problem = "mis", dec_mod_mode = "auto", dec_out_td, dec_out_mod;
    int dec_eta = -1;
    dec_cmd->add_option("--input", dec_input)->required();
    dec_cmd->add_option("--problem", dec_problem);
    dec_cmd->add_option("--eta", dec_eta);
    dec_cmd->add_option("--modulator", dec_mod_mode, "auto|exact|greedy");
    dec_cmd->add_option("--out-td", dec_out_td, "write the rooted decomposition here");
    dec_cmd->add_option("--out-mod", dec_out_mod, "write the modulator here");

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "run one method on one instance");
    std::string sol_input, sol_problem = "mis", sol_method = "tdpa", sol_oracle = "greedy";
    int sol_eta = -1;
    uint64_t sol_seed = 1;
    IclParams sol_icl;
    RdParams sol_rd{0.25, 20};
    bool sol_print_assignment = false;
    std::string sol_mod_mode = "auto";
    solve_cmd->add_option("--input", sol_input)->required();
    solve_cmd->add_option("--problem", sol_problem);
    solve_cmd->add_option("--method", sol_method, "oracle|tdpa|icl|it|rd|rt");
    solve_cmd->add_option("--eta", sol_eta);
    solve_cmd->add_option("--seed", sol_seed);
    solve_cmd->add_option("--oracle", sol_oracle, "greedy|perfect|cmd:...");
    solve_cmd->add_option("--icl.k", sol_icl.k);
    solve_cmd->add_option("--icl.kappa", sol_icl.kappa);
    solve_cmd->add_option("--icl.max-rounds", sol_icl.max_rounds);
    solve_cmd->add_option("--rd.rho", sol_rd.rho);
    solve_cmd->add_option("--rd.rounds", sol_rd.rounds);
    solve_cmd->add_option("--modulator", sol_mod_mode, "auto|exact|greedy");
    solve_cmd->add_flag("--print-assignment", sol_print_assignment);

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "full method-grid experiment");
    std::string bench_config, bench_dataset, bench_problem, bench_oracle, bench_methods;
    std::string bench_out, bench_format = "text", bench_profile, bench_modulator;
    int bench_eta = -2, bench_seeds = -1, bench_bestof = -1, bench_count = -1, bench_threads = -1;
    int bench_icl_k = -1, bench_icl_kappa = -1;
    double bench_rd_rho = -1;
    int bench_rd_rounds = -1;
    uint64_t bench_seed = 0;
    bool bench_have_seed = false;
    bench_cmd->add_option("--config", bench_config, "flat key = value file");
    bench_cmd->add_option("--dataset", bench_dataset, "directory of edge lists");
    bench_cmd->add_option("--profile", bench_profile, "generate instances from this profile");
    bench_cmd->add_option("--count", bench_count, "instances when generating inline");
    bench_cmd->add_option("--problem", bench_problem);
    bench_cmd->add_option("--eta", bench_eta);
    bench_cmd->add_option("--seeds", bench_seeds);
    bench_cmd->add_option("--bestof", bench_bestof);
    bench_cmd->add_option("--oracle", bench_oracle);
    bench_cmd->add_option("--methods", bench_methods, "comma list");
    bench_cmd->add_option("--icl.k", bench_icl_k);
    bench_cmd->add_option("--icl.kappa", bench_icl_kappa);
    bench_cmd->add_option("--rd.rho", bench_rd_rho);
    bench_cmd->add_option("--rd.rounds", bench_rd_rounds);
    bench_cmd->add_option("--modulator", bench_modulator);
    bench_cmd->add_option("--threads", bench_threads);
    bench_cmd->add_option("--seed", bench_seed)->each([&](const std::string&) { bench_have_seed = true; });
    bench_cmd->add_option("--out", bench_out, "directory for report.csv/report.txt/instances.tsv");
    bench_cmd->add_option("--format", bench_format, "csv|text (stdout rendering)");

    // ---- oracle-check ----
    auto* check_cmd = app.add_subcommand("oracle-check", "external oracle conformance battery");
    std::string check_stub, check_oracle;
    double check_timeout = 10.0;
    check_cmd->add_option("--stub", check_stub, "path to the shipped stub oracle binary");
    check_cmd->add_option("--oracle", check_oracle, "cmd:... to test instead of the stub");
    check_cmd->add_option("--timeout", check_timeout);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            const GenSpec spec = resolve_gen_spec(gen_args);
            validate_spec(spec);
            make_dataset(spec, gen_args.count, gen_args.out_dir);
            std::cout << "wrote " << gen_args.count << " instances to " << gen_args.out_dir << "\n";
            return 0;
        }

        if (*dec_cmd) {
            const ProblemKind kind = problem_or_die(dec_problem);
            const int eta = dec_eta >= 0 ? dec_eta : default_eta(kind);
            const Graph g = parse_edge_list_file(dec_input);
            const TreeDecomposition raw = min_degree_td(g);
            const TreeDecomposition td = prune_bags(raw);
            const auto check = validate_td(g, td);
            std::cout << "n " << g.num_vertices() << "  m " << g.num_edges() << "\n"
                      << "width " << raw.width() << " -> " << td.width() << " after pruning\n"
                      << "bags " << raw.num_bags() << " -> " << td.num_bags() << "\n"
                      << "valid " << (check.ok ? "yes" : ("NO: " + check.violated)) << "\n";
            Modulator mod;
            if (dec_mod_mode == "greedy") {
                mod = modulator_greedy(td, eta);
            } else {
                const auto exact = modulator_exact(td, eta);
                mod = exact.modulator;
                if (dec_mod_mode == "exact" || exact.optimal)
                    std::cout << "modulator " << (exact.optimal ? "exact" : "budget-capped") << "\n";
            }
            std::cout << "eta " << eta << "  modulator size " << mod.vertices.size()
                      << "  feasible " << (verify_modulator(td, mod) ? "yes" : "NO") << "\n";
            if (!dec_out_td.empty()) {
                std::ofstream out(dec_out_td);
                write_td(out, root_and_order(td));
            }
            if (!dec_out_mod.empty()) {
                std::ofstream out(dec_out_mod);
                out << to_line(mod) << "\n";
            }
            return 0;
        }

        if (*solve_cmd) {
            const ProblemKind kind = problem_or_die(sol_problem);
            const int eta = sol_eta >= 0 ? sol_eta : default_eta(kind);
            const Graph g = parse_edge_list_file(sol_input);
            const TreeDecomposition td = prune_bags(min_degree_td(g));
            const RootedTd rooted = root_and_order(td);
            Modulator mod = sol_mod_mode == "greedy" ? modulator_greedy(td, eta)
                                                     : modulator_exact(td, eta).modulator;
            auto oracle = make_oracle(sol_oracle);

            long long value = 0;
            Assignment assignment;
            const auto solve_one = [&](const AdviceString& advice) {
                const DPOutcome dp = tdpa_solve(g, rooted, mod, advice, kind);
                return dp;
            };
            if (sol_method == "oracle") {
                OracleCall call{&g, kind, Assignment(g.num_vertices()), sol_seed};
                assignment = oracle->produce(call).full;
                value = evaluate(g, kind, assignment);
            } else if (sol_method == "tdpa") {
                OracleCall call{&g, kind, Assignment(g.num_vertices()), sol_seed};
                const Assignment traj = oracle->produce(call).full;
                const DPOutcome dp = solve_one(advice_from(traj, mod));
                value = dp.value;
                assignment = dp.assignment;
            } else if (sol_method == "icl" || sol_method == "it") {
                const IclOutcome icl = icl_run(*oracle, g, kind, mod, sol_icl, sol_seed);
                if (sol_method == "icl") {
                    assignment = icl.completion;
                    value = evaluate(g, kind, assignment);
                } else {
                    const DPOutcome dp = solve_one(icl.advice);
                    value = dp.value;
                    assignment = dp.assignment;
                }
            } else if (sol_method == "rd" || sol_method == "rt") {
                const auto rounds = rd_run(*oracle, g, kind, mod, sol_rd, sol_seed);
                bool first = true;
                for (const auto& round : rounds) {
                    long long v;
                    Assignment a;
                    if (sol_method == "rd") {
                        a = round.trajectory;
                        v = evaluate(g, kind, a);
                    } else {
                        const DPOutcome dp = solve_one(round.advice);
                        v = dp.value;
                        a = dp.assignment;
                    }
                    if (first || (maximizing(kind) ? v > value : v < value)) {
                        value = v;
                        assignment = a;
                    }
                    first = false;
                }
            } else {
                throw CLI::ValidationError("--method", "unknown method " + sol_method);
            }

            std::cout << "value " << value << "\n";
            if (g.num_vertices() <= 26 || td.width() <= 18) {
                const Reference ref = reference_opt(g, kind, 18, value);
                std::cout << "reference " << ref.value << (ref.exact ? " (exact)" : " (best known)")
                          << "  gap% "
                          << gap_percent(kind, (double)value, (double)ref.value) << "\n";
            }
            if (sol_print_assignment) std::cout << to_string(assignment) << "\n";
            return 0;
        }

        if (*bench_cmd) {
            ExperimentConfig cfg;
            if (!bench_config.empty()) apply_config(cfg, parse_config_file(bench_config));
            // flags override file keys
            if (!bench_dataset.empty()) cfg.dataset_files = load_dataset(bench_dataset);
            if (!bench_profile.empty()) {
                const auto p = profile_spec(bench_profile);
                if (!p) throw CLI::ValidationError("--profile", "unknown profile " + bench_profile);
                GenSpec spec = *p;
                spec.seed = cfg.inline_spec ? cfg.inline_spec->seed : 1;
                cfg.inline_spec = spec;
                if (cfg.inline_count == 0) cfg.inline_count = 20;
            }
            if (bench_count >= 0) cfg.inline_count = bench_count;
            if (!bench_problem.empty()) cfg.kind = problem_or_die(bench_problem);
            if (bench_eta != -2) cfg.eta = bench_eta;
            if (bench_seeds >= 0) cfg.seeds = bench_seeds;
            if (bench_bestof >= 0) cfg.bestof = bench_bestof;
            if (!bench_oracle.empty()) cfg.oracle = bench_oracle;
            if (bench_icl_k >= 0) cfg.icl.k = bench_icl_k;
            if (bench_icl_kappa >= 0) cfg.icl.kappa = bench_icl_kappa;
            if (bench_rd_rho >= 0) cfg.rd.rho = bench_rd_rho;
            if (bench_rd_rounds >= 0) cfg.rd.rounds = bench_rd_rounds;
            if (!bench_modulator.empty()) cfg.modulator_mode = bench_modulator;
            if (bench_threads >= 0) cfg.threads = bench_threads;
            if (bench_have_seed) cfg.master_seed = bench_seed;
            if (!bench_methods.empty()) {
                std::map<std::string, std::string> kv{{"methods", bench_methods}};
                apply_config(cfg, kv);
            }

            const auto format = parse_format(bench_format);
            if (!format) throw CLI::ValidationError("--format", "expected csv or text");

            const ExperimentResult res = run_experiment(cfg);
            emit_report(std::cout, res.rows, *format);

            if (!bench_out.empty()) {
                fs::create_directories(bench_out);
                std::ofstream csv(fs::path(bench_out) / "report.csv");
                emit_report(csv, res.rows, ReportFormat::Csv);
                std::ofstream txt(fs::path(bench_out) / "report.txt");
                emit_report(txt, res.rows, ReportFormat::Text);
                std::ofstream inst(fs::path(bench_out) / "instances.tsv");
                inst << "# name\tn\tm\twidth\tmodulator\topt\texact\tfailed\n";
                for (const auto& info : res.instances)
                    inst << info.name << '\t' << info.n << '\t' << info.m << '\t' << info.width
                         << '\t' << info.modulator_size << '\t' << info.opt << '\t'
                         << info.opt_exact << '\t' << info.failed << '\n';
            }
            int failures = 0;
            for (const auto& info : res.instances) failures += info.failed;
            if (failures > 0)
                std::cerr << "warning: " << failures << " instance(s) skipped on oracle failure\n";
            return 0;
        }

        if (*check_cmd) {
            if (check_oracle.empty() && check_stub.empty()) {
                // default: stub binary sitting next to this one
                const fs::path self = fs::canonical("/proc/self/exe");
                check_stub = (self.parent_path() / "nfpt-stub-oracle").string();
            }
            return run_oracle_check(check_stub, check_oracle, check_timeout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
