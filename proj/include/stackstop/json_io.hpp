#pragma once
#include <string>

#include <json.hpp>

#include "stackstop/asymptotic.hpp"
#include "stackstop/exact_response.hpp"
#include "stackstop/near_optimal.hpp"
#include "stackstop/oracle_sim.hpp"

namespace stackstop {

inline constexpr int kSchemaVersion = 1;

// x rounded to `digits` decimal places, ties to even.
double round_to(double x, int digits);

nlohmann::json to_json(const GameSolution& sol, int precision);
nlohmann::json to_json(const NearOptimalSolution& sol, int precision);
nlohmann::json to_json(const SimReport& report, int precision);
nlohmann::json to_json(const UpperBoundResult& ub, int precision);
nlohmann::json to_json(const LowerBoundResult& lb, int precision);

// Atomic write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace stackstop
