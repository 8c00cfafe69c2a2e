#include "stackstop/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace stackstop {

double round_to(double x, int digits) {
    const double scale = std::pow(10.0, digits);
    return std::nearbyint(x * scale) / scale; // default FP mode: ties to even
}

namespace {

nlohmann::json rounded_array(const std::vector<double>& xs, int precision) {
    nlohmann::json arr = nlohmann::json::array();
    for (double x : xs) arr.push_back(round_to(x, precision));
    return arr;
}

nlohmann::json clause_json(const StrategyClause& clause) {
    nlohmann::json j;
    j["candidate_index"] = clause.candidate_index;
    j["accept_from"] = clause.accept_from;
    if (clause.candidate_index == 0) j["accept_to"] = clause.accept_to;
    j["always"] = clause.always;
    j["text"] = clause.text;
    if (!clause.exceptions.empty()) {
        nlohmann::json exs = nlohmann::json::array();
        for (const auto& ex : clause.exceptions) {
            nlohmann::json e;
            e["moment"] = ex.moment;
            if (ex.mu_index > 0) {
                e["mu_index"] = ex.mu_index;
                e["before_moment"] = ex.before_moment;
            } else {
                e["accept_histories"] = ex.accept_histories;
            }
            e["text"] = ex.text;
            exs.push_back(e);
        }
        j["exceptions"] = exs;
    }
    return j;
}

} // namespace

nlohmann::json to_json(const GameSolution& sol, int precision) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = sol.n_objects;
    j["n_star"] = sol.n_star;
    j["n0"] = sol.n0;
    j["n1"] = sol.n1;
    j["m0"] = sol.m0;
    j["u1"] = round_to(sol.u1, precision);
    j["u2"] = round_to(sol.u2, precision);
    j["q_table_first_n"] = sol.n_star + 1;
    j["q_table"] = rounded_array(sol.q, precision);
    j["always_accept_from"] = sol.always_accept_from;
    nlohmann::json clauses = nlohmann::json::array();
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& clause : sol.strategy) {
        clauses.push_back(clause_json(clause));
        summary.push_back(clause.text);
    }
    j["strategy"] = clauses;
    j["strategy_summary"] = summary;
    if (sol.exact) {
        j["u1_fraction"] = fraction_string(sol.u1_exact);
        j["u2_fraction"] = fraction_string(sol.u2_exact);
    }
    return j;
}

nlohmann::json to_json(const NearOptimalSolution& sol, int precision) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = sol.n_objects;
    j["n_star"] = sol.n_star;
    j["m0"] = sol.m0;
    j["n0"] = sol.n0_a;
    j["n_m"] = sol.n_m;
    j["u2"] = round_to(sol.value, precision);
    if (sol.exact) j["u2_fraction"] = fraction_string(sol.value_exact);
    return j;
}

nlohmann::json to_json(const SimReport& report, int precision) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["trials"] = report.trials;
    j["successes"] = report.successes;
    j["estimate"] = round_to(report.estimate, precision);
    j["std_error"] = round_to(report.std_error, precision);
    j["seed"] = report.seed;
    return j;
}

nlohmann::json to_json(const UpperBoundResult& ub, int precision) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["t1"] = round_to(ub.t1, precision);
    j["c1"] = round_to(ub.c1, precision);
    j["c2"] = round_to(ub.c2, precision);
    j["c3"] = round_to(ub.c3, precision);
    j["t0_u"] = round_to(ub.t0_u, precision);
    return j;
}

nlohmann::json to_json(const LowerBoundResult& lb, int precision) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["k"] = lb.k;
    j["thresholds"] = rounded_array(lb.thresholds, precision);
    j["t0_k"] = round_to(lb.t0_k, precision);
    j["value"] = round_to(lb.value, precision);
    j["pre_coeff"] = round_to(lb.pre_coeff, precision);
    return j;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << contents;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("rename failed for " + path);
    }
}

} // namespace stackstop
