#pragma once

#include <json.hpp>

#include "cofix/contraction.hpp"
#include "cofix/fuzz.hpp"
#include "cofix/metric.hpp"
#include "cofix/oracle.hpp"
#include "cofix/reduction.hpp"
#include "cofix/solver.hpp"
#include "cofix/synthesis.hpp"

namespace cofix::cli {

using json = nlohmann::json;

json to_json(const AxiomReport& r);
json to_json(const ViolationReport& r);
ViolationReport violation_from_json(const json& j);
json to_json(const InclusionReport& r);
json to_json(const SynthesisResult& r);
json to_json(const WeakCompatibility& w);

// The trace arrays are left out unless `with_trace`.
json to_json(const SolveReport& r, bool with_trace = true);
SolveReport solve_report_from_json(const json& j);
SolveStatus parse_status(const std::string& s);

json to_json(const ReductionWitness& w);
json to_json(const CoincidenceReport& r, bool with_trace = true);
json to_json(const OracleResult& r);
json to_json(const FuzzSummary& s);

}  // namespace cofix::cli
