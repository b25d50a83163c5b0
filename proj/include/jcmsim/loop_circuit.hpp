/*
 * Optical loop inside the cavity, built from a polarizing beam splitter
 * (PBS) and a Pockels cell (PC).
 *
 * A single photon is tracked over path {a, b} (x) polarization {V, H}. Path
 * a is the closed loop through the cavity; path b is the external port. The
 * PBS keeps V on its path and moves H to the other path. The PC sits on
 * path a and swaps V <-> H while switched on.
 *
 * One loop round trip is one PBS traversal followed by one PC traversal.
 * The loss budget counts the same traversals.
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jcmsim/fock.hpp"

namespace jcmsim {

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s
// Rb-85 63p3/2 <-> 61d5/2 microwave transition used for the timing estimates.
inline constexpr double kReferenceWavelength = 1.39724e-2;  // m
inline constexpr double kAvailablePcResponse = 2.5e-10;     // s

enum class Path { a = 0, b = 1 };
enum class Polarization { V = 0, H = 1 };

class PolarizedMode {
 public:
  PolarizedMode() = default;
  explicit PolarizedMode(std::array<Complex, 4> amplitudes) : amp_(amplitudes) {}

  static PolarizedMode basis(Path path, Polarization pol);
  // c_V |V> + c_H |H> on one path.
  static PolarizedMode on_path(Path path, Complex c_v, Complex c_h);

  Complex at(Path path, Polarization pol) const { return amp_[index(path, pol)]; }
  const std::array<Complex, 4>& amplitudes() const { return amp_; }
  double norm_squared() const;
  double path_weight(Path path) const;

  static std::size_t index(Path path, Polarization pol) {
    return static_cast<std::size_t>(path) * 2 + static_cast<std::size_t>(pol);
  }

  friend bool operator==(const PolarizedMode&, const PolarizedMode&) = default;

 private:
  std::array<Complex, 4> amp_{};
};

PolarizedMode pbs_apply(const PolarizedMode& s);
// Acts on both paths; the device itself only ever sees one.
PolarizedMode pockels_apply(const PolarizedMode& s, bool on);
// PC located on `path`; amplitudes on the other path pass by untouched.
PolarizedMode pockels_apply(const PolarizedMode& s, bool on, Path path);

enum class LoopStage { injection = 0, circulation = 1, extraction = 2 };
std::string to_string(LoopStage stage);

struct LoopPhase {
  bool pc_on = false;
  double duration = 0.0;  // s
};

// Injection, circulation, extraction. The circulation window must equal the
// NS gate time (2m+1) pi / (sqrt(2)|kappa|).
class LoopSchedule {
 public:
  // Throws InvalidArgument when there are not exactly three phases, a
  // duration is negative, or the circulation window is off by more than
  // `rel_tol` from the gate time.
  LoopSchedule(std::vector<LoopPhase> phases, double kappa_abs, int m, double rel_tol = 1e-9);

  // PC on, off, on; switching windows of L/c for the given wavelength.
  static LoopSchedule canonical(double kappa_abs, int m, double wavelength = kReferenceWavelength);

  const std::array<LoopPhase, 3>& phases() const { return phases_; }
  const LoopPhase& phase(LoopStage stage) const { return phases_[static_cast<std::size_t>(stage)]; }
  double kappa_abs() const { return kappa_abs_; }
  int m() const { return m_; }

 private:
  std::array<LoopPhase, 3> phases_;
  double kappa_abs_;
  int m_;
};

struct TraceStep {
  LoopStage stage;
  std::string action;
  PolarizedMode state;  // after the action
  double loop_weight;   // on path a
  double port_weight;   // on path b
};

struct ProtocolTrace {
  std::vector<TraceStep> steps;
  int exit_phase;             // 1-based phase at which the photon left (3 on success)
  double exit_weight;         // probability that left through the port
  double residual_loop_weight;
  double circulation_window;  // s
  double round_trip_time;     // s
  double round_trips;         // circulation_window / round_trip_time
};

// Executes the schedule on a photon injected through the port with the given
// polarization (c_V, c_H). Throws ProtocolViolation when the input is not H,
// when the photon leaves before extraction, or when it stays trapped.
ProtocolTrace run_loop_protocol(const LoopSchedule& schedule, Complex c_v, Complex c_h,
                                double wavelength = kReferenceWavelength);

struct LoopTimingConfig {
  double wavelength = kReferenceWavelength;  // m
  double kappa_abs = 1.0e6 / 70.0;           // s^-1
  double loss_pc = 0.04;
  double loss_pbs = 0.01;
  double pc_response_available = kAvailablePcResponse;  // s
  int pc_passes_per_round_trip = 1;
  int pbs_passes_per_round_trip = 1;
};

struct GateBudget {
  int m;
  double gate_time;       // s
  double round_trips;     // gate_time / (2L/c)
  double survival_log10;  // log10 of the survival probability
  double survival_probability;  // may underflow to 0; see survival_log10
  std::string survival_scientific;  // e.g. "3.12e-222790"
};

struct LoopTimingReport {
  LoopTimingConfig config;
  double cavity_width;          // L = lambda / 2
  double pc_response_required;  // L / c
  bool pc_fast_enough;          // available response <= required
  double round_trip_time;       // 2L / c
  double survival_per_round_trip;
  GateBudget m1;
  GateBudget m3;
};

// Throws InvalidArgument for non-positive inputs or losses outside [0, 1).
LoopTimingReport timing_report(const LoopTimingConfig& config);

// Formats 10^log10_value as "<mantissa>e<exponent>" without underflow.
std::string scientific_from_log10(double log10_value, int digits = 3);

}  // namespace jcmsim
