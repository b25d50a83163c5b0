#include "jcmsim/loop_circuit.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "jcmsim/errors.hpp"
#include "jcmsim/jcm.hpp"

namespace jcmsim {

namespace {

// Amplitude treated as zero when deciding where the photon is.
constexpr double kWeightTol = 1e-12;

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be positive");
}

void check_loss(double v, const char* name) {
  if (!(v >= 0.0 && v < 1.0)) throw InvalidArgument(std::string(name) + " must be in [0, 1)");
}

GateBudget budget_for(int m, const LoopTimingConfig& c, double round_trip_time, double per_trip_log10) {
  GateBudget b;
  b.m = m;
  b.gate_time = ns_gate_time(c.kappa_abs, m);
  b.round_trips = b.gate_time / round_trip_time;
  b.survival_log10 = b.round_trips * per_trip_log10;
  b.survival_probability = std::pow(10.0, b.survival_log10);
  b.survival_scientific = scientific_from_log10(b.survival_log10);
  return b;
}

}  // namespace

PolarizedMode PolarizedMode::basis(Path path, Polarization pol) {
  std::array<Complex, 4> a{};
  a[index(path, pol)] = 1.0;
  return PolarizedMode(a);
}

PolarizedMode PolarizedMode::on_path(Path path, Complex c_v, Complex c_h) {
  std::array<Complex, 4> a{};
  a[index(path, Polarization::V)] = c_v;
  a[index(path, Polarization::H)] = c_h;
  return PolarizedMode(a);
}

double PolarizedMode::norm_squared() const {
  double acc = 0.0;
  for (Complex c : amp_) acc += std::norm(c);
  return acc;
}

double PolarizedMode::path_weight(Path path) const {
  return std::norm(at(path, Polarization::V)) + std::norm(at(path, Polarization::H));
}

PolarizedMode pbs_apply(const PolarizedMode& s) {
  std::array<Complex, 4> out{};
  for (Path p : {Path::a, Path::b}) {
    const Path other = p == Path::a ? Path::b : Path::a;
    out[PolarizedMode::index(p, Polarization::V)] = s.at(p, Polarization::V);
    out[PolarizedMode::index(other, Polarization::H)] = s.at(p, Polarization::H);
  }
  return PolarizedMode(out);
}

PolarizedMode pockels_apply(const PolarizedMode& s, bool on) {
  return pockels_apply(pockels_apply(s, on, Path::a), on, Path::b);
}

PolarizedMode pockels_apply(const PolarizedMode& s, bool on, Path path) {
  if (!on) return s;
  auto out = s.amplitudes();
  std::swap(out[PolarizedMode::index(path, Polarization::V)], out[PolarizedMode::index(path, Polarization::H)]);
  return PolarizedMode(out);
}

std::string to_string(LoopStage stage) {
  switch (stage) {
    case LoopStage::injection:
      return "injection";
    case LoopStage::circulation:
      return "circulation";
    case LoopStage::extraction:
      return "extraction";
  }
  return "unknown";
}

LoopSchedule::LoopSchedule(std::vector<LoopPhase> phases, double kappa_abs, int m, double rel_tol)
    : kappa_abs_(kappa_abs), m_(m) {
  if (phases.size() != 3) {
    throw InvalidArgument("loop schedule needs exactly three phases (injection, circulation, extraction), got " +
                          std::to_string(phases.size()));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(phases[i].duration >= 0.0) || !std::isfinite(phases[i].duration)) {
      throw InvalidArgument("phase durations must be non-negative");
    }
    phases_[i] = phases[i];
  }
  const double gate = ns_gate_time(kappa_abs, m);
  const double window = phases_[1].duration;
  if (std::abs(window - gate) > rel_tol * gate) {
    throw InvalidArgument("circulation window " + std::to_string(window) + " s does not match the m=" +
                          std::to_string(m) + " gate time " + std::to_string(gate) + " s");
  }
}

LoopSchedule LoopSchedule::canonical(double kappa_abs, int m, double wavelength) {
  check_positive(wavelength, "wavelength");
  const double switch_window = (wavelength / 2.0) / kSpeedOfLight;
  return LoopSchedule({{true, switch_window}, {false, ns_gate_time(kappa_abs, m)}, {true, switch_window}},
                      kappa_abs, m);
}

ProtocolTrace run_loop_protocol(const LoopSchedule& schedule, Complex c_v, Complex c_h, double wavelength) {
  check_positive(wavelength, "wavelength");
  const double in_norm = std::norm(c_v) + std::norm(c_h);
  if (std::abs(in_norm - 1.0) > kExactTolerance) {
    throw ProtocolViolation("injected polarization must be normalized");
  }
  if (std::norm(c_v) > kWeightTol) {
    throw ProtocolViolation("injected photon must be |H> on the port; the V part never enters the loop");
  }

  ProtocolTrace trace{};
  trace.round_trip_time = wavelength / kSpeedOfLight;  // 2L / c with L = lambda / 2
  trace.circulation_window = schedule.phase(LoopStage::circulation).duration;
  trace.round_trips = trace.circulation_window / trace.round_trip_time;

  PolarizedMode state = PolarizedMode::on_path(Path::b, c_v, c_h);
  auto record = [&](LoopStage stage, std::string action) {
    trace.steps.push_back({stage, std::move(action), state, state.path_weight(Path::a), state.path_weight(Path::b)});
  };
  auto fail = [&](LoopStage stage, const std::string& why) {
    throw ProtocolViolation(to_string(stage) + ": " + why);
  };
  auto pc_label = [](bool on) { return std::string(on ? "PC on" : "PC off"); };

  // Injection: enter through the PBS, one PC traversal.
  const bool pc_inject = schedule.phase(LoopStage::injection).pc_on;
  state = pbs_apply(state);
  record(LoopStage::injection, "PBS (enter loop)");
  if (state.path_weight(Path::b) > kWeightTol) fail(LoopStage::injection, "photon did not enter the loop");
  state = pockels_apply(state, pc_inject, Path::a);
  record(LoopStage::injection, pc_label(pc_inject));

  // Circulation: the state must be a fixed point of one round trip, so two
  // simulated trips stand in for the whole window.
  const bool pc_circ = schedule.phase(LoopStage::circulation).pc_on;
  const PolarizedMode start = state;
  for (int trip = 1; trip <= 2; ++trip) {
    state = pbs_apply(state);
    record(LoopStage::circulation, "round trip " + std::to_string(trip) + ": PBS");
    if (state.path_weight(Path::b) > kWeightTol) {
      fail(trip == 1 && !pc_inject ? LoopStage::injection : LoopStage::circulation,
           "photon ejected through the PBS before extraction (H on the loop path)");
    }
    state = pockels_apply(state, pc_circ, Path::a);
    record(LoopStage::circulation, "round trip " + std::to_string(trip) + ": " + pc_label(pc_circ));
  }
  if (!(state == start)) fail(LoopStage::circulation, "loop state is not stationary over a round trip");

  // Extraction: PBS, PC traversal, PBS out through the port.
  const bool pc_extract = schedule.phase(LoopStage::extraction).pc_on;
  state = pbs_apply(state);
  record(LoopStage::extraction, "PBS");
  state = pockels_apply(state, pc_extract, Path::a);
  record(LoopStage::extraction, pc_label(pc_extract));
  state = pbs_apply(state);
  record(LoopStage::extraction, "PBS (exit)");

  trace.exit_weight = state.path_weight(Path::b);
  trace.residual_loop_weight = state.path_weight(Path::a);
  if (trace.residual_loop_weight > kWeightTol) {
    fail(LoopStage::extraction, "photon remains trapped in the loop");
  }
  trace.exit_phase = 3;
  return trace;
}

std::string scientific_from_log10(double log10_value, int digits) {
  if (!std::isfinite(log10_value)) return "0";
  const double exponent = std::floor(log10_value);
  double mantissa = std::pow(10.0, log10_value - exponent);
  long long exp_int = static_cast<long long>(exponent);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits - 1, mantissa);
  // Rounding can push the mantissa to 10.0.
  if (std::string(buf).rfind("10", 0) == 0) {
    mantissa /= 10.0;
    ++exp_int;
    std::snprintf(buf, sizeof buf, "%.*f", digits - 1, mantissa);
  }
  return std::string(buf) + "e" + std::to_string(exp_int);
}

LoopTimingReport timing_report(const LoopTimingConfig& config) {
  check_positive(config.wavelength, "wavelength");
  check_positive(config.kappa_abs, "kappa");
  check_positive(config.pc_response_available, "pc_response_available");
  check_loss(config.loss_pc, "loss_pc");
  check_loss(config.loss_pbs, "loss_pbs");
  if (config.pc_passes_per_round_trip < 0 || config.pbs_passes_per_round_trip < 0) {
    throw InvalidArgument("traversal counts must be non-negative");
  }

  LoopTimingReport r{};
  r.config = config;
  r.cavity_width = config.wavelength / 2.0;
  r.pc_response_required = r.cavity_width / kSpeedOfLight;
  r.pc_fast_enough = config.pc_response_available <= r.pc_response_required;
  r.round_trip_time = 2.0 * r.cavity_width / kSpeedOfLight;
  const double per_trip_log10 = config.pc_passes_per_round_trip * std::log10(1.0 - config.loss_pc) +
                                config.pbs_passes_per_round_trip * std::log10(1.0 - config.loss_pbs);
  r.survival_per_round_trip = std::pow(10.0, per_trip_log10);
  r.m1 = budget_for(1, config, r.round_trip_time, per_trip_log10);
  r.m3 = budget_for(3, config, r.round_trip_time, per_trip_log10);
  return r;
}

}  // namespace jcmsim
