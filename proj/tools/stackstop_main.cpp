#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stackstop/asymptotic.hpp"
#include "stackstop/json_io.hpp"
#include "stackstop/oracle_sim.hpp"

namespace {

using namespace stackstop;

struct OutputOptions {
    std::string format = "json";
    int precision = 6;
    std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--precision", opts.precision, "Decimal places in emitted numbers")
        ->check(CLI::Range(0, 15));
    cmd->add_option("--out", opts.out_path, "Write to this file (temp + rename) instead of stdout");
}

void emit(const OutputOptions& opts, const std::string& text) {
    std::string body = text;
    if (body.empty() || body.back() != '\n') body.push_back('\n');
    if (opts.out_path.empty()) {
        std::cout << body;
    } else {
        write_file_atomic(opts.out_path, body);
    }
}

std::string fmt(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, x);
    return buf;
}

std::string kv_csv(const nlohmann::json& j) {
    std::ostringstream out;
    out << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it->is_structured()) continue;
        out << it.key() << ',' << it->dump() << '\n';
    }
    return out.str();
}

std::unique_ptr<P2Policy> make_p2(const std::string& name, int n_objects, int n_star) {
    if (name == "optimal") return p2_optimal(solve_game(n_objects));
    if (name == "near-opt") return p2_near_optimal(solve_near_optimal(n_objects));
    if (name == "first") return std::make_unique<P2AcceptFirst>();
    if (name == "final") return std::make_unique<P2MomentThreshold>(n_objects, n_star);
    if (name.rfind("threshold:", 0) == 0) {
        const int tau = std::stoi(name.substr(10));
        if (tau < 1 || tau > n_objects) throw CLI::ValidationError("--p2", "threshold out of range");
        return std::make_unique<P2MomentThreshold>(tau, n_star);
    }
    throw CLI::ValidationError("--p2", "unknown policy '" + name + "'");
}

int run_solve(int n, const OutputOptions& opts) {
    const nlohmann::json j = to_json(solve_game(n), opts.precision);
    emit(opts, opts.format == "json" ? j.dump(2) : kv_csv(j));
    return 0;
}

int run_near_opt(int n, const OutputOptions& opts) {
    const nlohmann::json j = to_json(solve_near_optimal(n), opts.precision);
    emit(opts, opts.format == "json" ? j.dump(2) : kv_csv(j));
    return 0;
}

int run_asymptotic(bool bounds_only, int max_k, const OutputOptions& opts) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    const UpperBoundResult ub = upper_bound();
    j["upper"] = to_json(ub, opts.precision);
    nlohmann::json lower = nlohmann::json::array();
    double best_lower = 0.0;
    for (int k = 0; k <= max_k; ++k) {
        const LowerBoundResult lb = lower_bound(k);
        lower.push_back({{"k", k},
                         {"value", round_to(lb.value, opts.precision)},
                         {"truncation_bound", truncation_bound(k)}});
        best_lower = lb.value;
    }
    j["lower"] = lower;
    j["interval"] = {round_to(best_lower, opts.precision), round_to(ub.t0_u, opts.precision)};
    if (!bounds_only) {
        nlohmann::json th = nlohmann::json::array();
        for (int m = 1; m <= 10; ++m) {
            th.push_back({{"m", m}, {"t", round_to(solve_threshold_t(m), opts.precision)}});
        }
        j["thresholds"] = th;
    }
    emit(opts, opts.format == "json" ? j.dump(2) : kv_csv(j));
    return 0;
}

int run_oracle(int n, const std::string& p2_name, bool allow_n13, const OutputOptions& opts) {
    const int n_star = solve_p1<double>(n).threshold;
    const P1Threshold p1(n_star);
    std::vector<std::pair<std::string, std::unique_ptr<P2Policy>>> rules;
    if (p2_name.empty()) {
        rules.emplace_back("accept-first", std::make_unique<P2AcceptFirst>());
        rules.emplace_back("moment-threshold-3", std::make_unique<P2MomentThreshold>(3, n_star));
        rules.emplace_back("final-only", std::make_unique<P2MomentThreshold>(n, n_star));
        if (n >= 3) rules.emplace_back("optimal", p2_optimal(solve_game(n)));
    } else {
        rules.emplace_back(p2_name, make_p2(p2_name, n, n_star));
    }
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = n;
    j["n_star"] = n_star;
    nlohmann::json arr = nlohmann::json::array();
    for (auto& [name, rule] : rules) {
        const ExactResult r = enumerate_exact(n, p1, *rule, allow_n13);
        arr.push_back({{"p2", name},
                       {"u1", fraction_string(r.u1)},
                       {"u2", fraction_string(r.u2)},
                       {"u1_decimal", round_to(to_double(r.u1), opts.precision)},
                       {"u2_decimal", round_to(to_double(r.u2), opts.precision)}});
    }
    j["strategies"] = arr;
    emit(opts, opts.format == "json" ? j.dump(2) : kv_csv(j));
    return 0;
}

int run_simulate(int n, std::uint64_t trials, std::uint64_t seed, const std::string& p2_name,
                 int threads, const OutputOptions& opts) {
    const int n_star = solve_p1<double>(n).threshold;
    const P1Threshold p1(n_star);
    const auto rule = make_p2(p2_name, n, n_star);
    const SimReport report = simulate(n, p1, *rule, trials, seed, threads);
    nlohmann::json j = to_json(report, opts.precision);
    j["p2"] = p2_name;
    emit(opts, opts.format == "json" ? j.dump(2) : kv_csv(j));
    return 0;
}

int run_tables(const std::string& which, int n, const OutputOptions& opts) {
    std::ostringstream csv;
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["table"] = which;
    if (which == "equilibria") {
        csv << "n,n_star,u1,n0,n1,u2\n";
        nlohmann::json rows = nlohmann::json::array();
        for (int nn : {3, 4, 5, 6, 7, 8, 9, 10, 20}) {
            const GameSolution s = solve_game(nn);
            const std::string n1 = s.n0 == 1 ? "-" : std::to_string(s.n1);
            csv << nn << ',' << s.n_star << ',' << fmt(s.u1, opts.precision) << ',' << s.n0 << ','
                << n1 << ',' << fmt(s.u2, opts.precision) << '\n';
            rows.push_back({{"n", nn},
                            {"n_star", s.n_star},
                            {"u1", round_to(s.u1, opts.precision)},
                            {"n0", s.n0},
                            {"n1", n1},
                            {"u2", round_to(s.u2, opts.precision)}});
        }
        j["rows"] = rows;
    } else if (which == "q") {
        const GameSolution s = solve_game(n);
        csv << "n,q\n";
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < s.q.size(); ++i) {
            const int moment = s.n_star + 1 + static_cast<int>(i);
            csv << moment << ',' << fmt(s.q[i], opts.precision) << '\n';
            rows.push_back({{"n", moment}, {"q", round_to(s.q[i], opts.precision)}});
        }
        j["rows"] = rows;
    } else if (which == "posterior") {
        const int n_star = solve_p1<double>(n).threshold;
        csv << "mu1";
        for (int mu2 = n_star + 2; mu2 <= n_star + 5; ++mu2) csv << ",mu2=" << mu2;
        csv << '\n';
        nlohmann::json rows = nlohmann::json::array();
        for (int mu1 = n_star + 1; mu1 <= n_star + 4; ++mu1) {
            csv << mu1;
            nlohmann::json row;
            row["mu1"] = mu1;
            for (int mu2 = n_star + 2; mu2 <= n_star + 5; ++mu2) {
                if (mu2 <= mu1) {
                    csv << ',';
                    continue;
                }
                const double p = update_posterior<double>(mu1, mu2, 0.5);
                csv << ',' << fmt(p, opts.precision);
                row[std::to_string(mu2)] = round_to(p, opts.precision);
            }
            csv << '\n';
            rows.push_back(row);
        }
        j["rows"] = rows;
    } else if (which == "thresholds-asymptotic") {
        csv << "m,t_m\n";
        nlohmann::json rows = nlohmann::json::array();
        for (int m : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 50, 100, 200, 500, 1000, 10000, 100000, 1000000}) {
            const double t = solve_threshold_t(m);
            csv << m << ',' << fmt(t, opts.precision) << '\n';
            rows.push_back({{"m", m}, {"t", round_to(t, opts.precision)}});
        }
        j["rows"] = rows;
    } else if (which == "bounds") {
        csv << "k,truncation_bound,lower_bound\n";
        nlohmann::json rows = nlohmann::json::array();
        for (int k = 0; k <= 3; ++k) {
            const double lb = lower_bound(k).value;
            const double tb = truncation_bound(k);
            csv << k << ',' << tb << ',' << fmt(lb, opts.precision) << '\n';
            rows.push_back({{"k", k}, {"truncation_bound", tb}, {"lower_bound", round_to(lb, opts.precision)}});
        }
        const double t0u = upper_bound().t0_u;
        csv << "upper,," << fmt(t0u, opts.precision) << '\n';
        j["rows"] = rows;
        j["upper_bound"] = round_to(t0u, opts.precision);
    } else if (which == "permutations") {
        if (n > 8) throw CLI::ValidationError("--n", "permutations table caps at N = 8");
        const int n_star = solve_p1<double>(n).threshold;
        const P1Threshold p1(n_star);
        csv << "permutation,markers,v2_accept_first,v2_threshold_3,v2_final_only\n";
        nlohmann::json rows = nlohmann::json::array();
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 1);
        P2AcceptFirst first;
        P2MomentThreshold thr3(3, n_star), fin(n, n_star);
        do {
            const RankSequence seq = make_rank_sequence(perm);
            const Player2View view = player2_view(seq, n_star);
            std::string perm_s, marks;
            int m_index = 0;
            for (int moment = 1; moment <= n; ++moment) {
                if (moment > 1) {
                    perm_s += ' ';
                    marks += ' ';
                }
                perm_s += std::to_string(perm[moment - 1]);
                marks += std::to_string(perm[moment - 1]);
                if (moment == view.p1_accept_moment) {
                    marks += "^0";
                } else if (moment > view.p1_accept_moment) {
                    for (int c : view.p2_candidate_moments) {
                        if (c == moment) {
                            marks += "^" + std::to_string(++m_index);
                            break;
                        }
                    }
                }
            }
            const int w1 = play_game(seq, p1, first).p2_success ? 1 : 0;
            const int w2 = play_game(seq, p1, thr3).p2_success ? 1 : 0;
            const int w3 = play_game(seq, p1, fin).p2_success ? 1 : 0;
            csv << perm_s << ',' << marks << ',' << w1 << ',' << w2 << ',' << w3 << '\n';
            rows.push_back({{"permutation", perm_s},
                            {"markers", marks},
                            {"v2_accept_first", w1},
                            {"v2_threshold_3", w2},
                            {"v2_final_only", w3}});
        } while (std::next_permutation(perm.begin(), perm.end()));
        j["rows"] = rows;
    } else {
        throw CLI::ValidationError("--which", "unknown table '" + which + "'");
    }
    emit(opts, opts.format == "csv" ? csv.str() : j.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solvers for the two-player sequential best-choice game"};
    app.require_subcommand(1);

    OutputOptions opts;
    int n = 50;
    int memory_k = 3;
    int threads = 0;
    bool bounds_only = false;
    bool allow_n13 = false;
    std::uint64_t trials = 1000000, seed = 1;
    std::string p2_name = "optimal";
    std::string oracle_p2;
    std::string which;

    auto* solve_cmd = app.add_subcommand("solve", "Exact optimal response and value for Player 2");
    solve_cmd->add_option("--n", n, "Number of objects")->required()->check(CLI::Range(3, 500));
    add_output_flags(solve_cmd, opts);

    auto* near_cmd = app.add_subcommand("near-opt", "Count-based near-optimal strategy and value");
    near_cmd->add_option("--n", n, "Number of objects")->required()->check(CLI::Range(3, 500));
    add_output_flags(near_cmd, opts);

    auto* asym_cmd = app.add_subcommand("asymptotic", "Asymptotic thresholds and value bounds");
    asym_cmd->add_flag("--bounds", bounds_only, "Emit only the bound bundle");
    asym_cmd->add_option("--k", memory_k, "Largest memory size for the lower bounds")->check(CLI::Range(0, 8));
    add_output_flags(asym_cmd, opts);

    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive permutation expectations");
    oracle_cmd->add_option("--n", n, "Number of objects")->required()->check(CLI::Range(1, 13));
    oracle_cmd->add_option("--p2", oracle_p2, "Single policy instead of the default set");
    oracle_cmd->add_flag("--allow-n13", allow_n13, "Lift the exhaustive cap from 12 to 13");
    add_output_flags(oracle_cmd, opts);

    auto* sim_cmd = app.add_subcommand("simulate", "Seeded Monte Carlo");
    sim_cmd->add_option("--n", n, "Number of objects")->required()->check(CLI::Range(1, 100000));
    sim_cmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", seed, "RNG seed");
    sim_cmd->add_option("--p2", p2_name, "Player 2 policy: optimal|near-opt|first|final|threshold:T");
    sim_cmd->add_option("--threads", threads, "Thread cap (default: STACKSTOP_THREADS or hardware)");
    add_output_flags(sim_cmd, opts);

    auto* tables_cmd = app.add_subcommand("tables", "Reference tables");
    tables_cmd
        ->add_option("--which", which,
                     "equilibria|q|posterior|thresholds-asymptotic|bounds|permutations")
        ->required();
    tables_cmd->add_option("--n", n, "Number of objects (q, posterior, permutations)");
    add_output_flags(tables_cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*solve_cmd) return run_solve(n, opts);
        if (*near_cmd) return run_near_opt(n, opts);
        if (*asym_cmd) return run_asymptotic(bounds_only, memory_k, opts);
        if (*oracle_cmd) return run_oracle(n, oracle_p2, allow_n13, opts);
        if (*sim_cmd) return run_simulate(n, trials, seed, p2_name, threads, opts);
        if (*tables_cmd) return run_tables(which, n, opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
