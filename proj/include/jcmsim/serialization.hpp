// JSON encodings of simulator values (nlohmann::json, ADL hooks).
//
// A state is {"mode_count": k, "n_max": n, "amplitudes": [[re, im], ...]}
// with amplitudes in the row-major multi-index order of MultiModeState.
#pragma once

#include <json.hpp>

#include "jcmsim/fock.hpp"
#include "jcmsim/interferometer.hpp"
#include "jcmsim/jcm.hpp"
#include "jcmsim/loop_circuit.hpp"

namespace jcmsim {

nlohmann::json complex_to_json(Complex c);
Complex complex_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const MultiModeState& s);
// Not an ADL hook because MultiModeState has no default constructor.
MultiModeState state_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const NSGateResult& r);
void to_json(nlohmann::json& j, const Table1Row& r);
void to_json(nlohmann::json& j, const InterferometerResponse& r);
void to_json(nlohmann::json& j, const DetectorStatistics& s);
void to_json(nlohmann::json& j, const ConditionedReport& r);
void to_json(nlohmann::json& j, const PolarizedMode& s);
void to_json(nlohmann::json& j, const ProtocolTrace& t);
void to_json(nlohmann::json& j, const GateBudget& b);
void to_json(nlohmann::json& j, const LoopTimingReport& r);

// {"kappa": .., "m": .., "phases": [{"pc_on": bool, "duration": s}, x3]}
LoopSchedule schedule_from_json(const nlohmann::json& j);

}  // namespace jcmsim
