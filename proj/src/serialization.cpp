#include "jcmsim/serialization.hpp"

#include "jcmsim/errors.hpp"

namespace jcmsim {

using nlohmann::json;

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidArgument("complex number must be [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void to_json(json& j, const MultiModeState& s) {
  json amps = json::array();
  for (Complex a : s.amplitudes()) amps.push_back(complex_to_json(a));
  j = json{{"mode_count", s.mode_count()}, {"n_max", s.n_max()}, {"amplitudes", std::move(amps)}};
}

MultiModeState state_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("state JSON must be an object");
  for (const char* key : {"mode_count", "n_max", "amplitudes"}) {
    if (!j.contains(key)) throw InvalidArgument(std::string("state JSON is missing \"") + key + "\"");
  }
  const auto& arr = j.at("amplitudes");
  if (!arr.is_array()) throw InvalidArgument("\"amplitudes\" must be an array");
  std::vector<Complex> amps;
  amps.reserve(arr.size());
  for (const auto& a : arr) amps.push_back(complex_from_json(a));
  return {j.at("mode_count").get<int>(), FockCutoff{j.at("n_max").get<int>()}, std::move(amps)};
}

void to_json(json& j, const NSGateResult& r) {
  j = json{{"output", r.output},
           {"success_probability", r.success_probability},
           {"failure_probability", r.failure_probability},
           {"m", r.m},
           {"c_m", complex_to_json(r.c_m)},
           {"d_m", r.d_m},
           {"compensating_phase", r.compensating_phase}};
}

void to_json(json& j, const Table1Row& r) { j = json{{"m", r.m}, {"c2", r.c_squared}, {"d", r.d}}; }

void to_json(json& j, const InterferometerResponse& r) {
  j = json{{"theta", r.theta},
           {"F", json::array({complex_to_json(r.F[0]), complex_to_json(r.F[1]), complex_to_json(r.F[2]),
                              complex_to_json(r.F[3])})},
           {"abs_F", json::array({std::abs(r.F[0]), std::abs(r.F[1]), std::abs(r.F[2]), std::abs(r.F[3])})},
           {"mu1", r.mu1},
           {"mu2", r.mu2}};
}

void to_json(json& j, const DetectorStatistics& s) {
  json joint = json::array();
  for (int n1 = 0; n1 < s.dim; ++n1) {
    json row = json::array();
    for (int n2 = 0; n2 < s.dim; ++n2) row.push_back(s.joint_at(n1, n2));
    joint.push_back(std::move(row));
  }
  j = json{{"d1", s.d1}, {"d2", s.d2}, {"joint", std::move(joint)}, {"mean_d1", s.mean_d1()},
           {"mean_d2", s.mean_d2()}};
}

void to_json(json& j, const ConditionedReport& r) {
  j = json{{"shots", r.config.shots},
           {"seed", r.config.seed},
           {"exact", r.exact},
           {"d1_histogram", r.d1_histogram},
           {"d2_histogram", r.d2_histogram},
           {"d2_single_count", r.d2_single_count},
           {"d2_single_frequency", r.d2_single_frequency},
           {"d2_single_exact", r.d2_single_exact},
           {"d2_single_leading_estimate", r.d2_single_leading},
           {"conditioned_d1_histogram", r.conditioned_d1_histogram},
           {"conditioned_d1_exact", r.conditioned_d1_exact}};
}

void to_json(json& j, const PolarizedMode& s) {
  j = json{{"a_V", complex_to_json(s.at(Path::a, Polarization::V))},
           {"a_H", complex_to_json(s.at(Path::a, Polarization::H))},
           {"b_V", complex_to_json(s.at(Path::b, Polarization::V))},
           {"b_H", complex_to_json(s.at(Path::b, Polarization::H))}};
}

void to_json(json& j, const ProtocolTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"stage", to_string(s.stage)},
                     {"action", s.action},
                     {"state", s.state},
                     {"loop_weight", s.loop_weight},
                     {"port_weight", s.port_weight}});
  }
  j = json{{"steps", std::move(steps)},
           {"exit_phase", t.exit_phase},
           {"exit_weight", t.exit_weight},
           {"residual_loop_weight", t.residual_loop_weight},
           {"circulation_window", t.circulation_window},
           {"round_trip_time", t.round_trip_time},
           {"round_trips", t.round_trips}};
}

void to_json(json& j, const GateBudget& b) {
  j = json{{"m", b.m},
           {"gate_time", b.gate_time},
           {"round_trips", b.round_trips},
           {"survival_log10", b.survival_log10},
           {"survival_probability", b.survival_probability},
           {"survival_scientific", b.survival_scientific}};
}

void to_json(json& j, const LoopTimingReport& r) {
  j = json{{"wavelength", r.config.wavelength},
           {"kappa", r.config.kappa_abs},
           {"loss_pc", r.config.loss_pc},
           {"loss_pbs", r.config.loss_pbs},
           {"pc_passes_per_round_trip", r.config.pc_passes_per_round_trip},
           {"pbs_passes_per_round_trip", r.config.pbs_passes_per_round_trip},
           {"cavity_width", r.cavity_width},
           {"pc_response_required", r.pc_response_required},
           {"pc_response_available", r.config.pc_response_available},
           {"pc_fast_enough", r.pc_fast_enough},
           {"round_trip_time", r.round_trip_time},
           {"survival_per_round_trip", r.survival_per_round_trip},
           {"gate_m1", r.m1},
           {"gate_m3", r.m3}};
}

LoopSchedule schedule_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("schedule JSON must be an object");
  for (const char* key : {"kappa", "m", "phases"}) {
    if (!j.contains(key)) throw InvalidArgument(std::string("schedule JSON is missing \"") + key + "\"");
  }
  std::vector<LoopPhase> phases;
  for (const auto& p : j.at("phases")) {
    if (!p.contains("pc_on") || !p.contains("duration")) {
      throw InvalidArgument("each phase needs \"pc_on\" and \"duration\"");
    }
    phases.push_back({p.at("pc_on").get<bool>(), p.at("duration").get<double>()});
  }
  return LoopSchedule(std::move(phases), j.at("kappa").get<double>(), j.at("m").get<int>());
}

}  // namespace jcmsim
