/*
 * Resonant Jaynes-Cummings evolution in the interaction picture and the
 * nonlinear sign-shift (NS) gate built from it.
 *
 * The coupling is C2 = kappa sigma_+ a + conj(kappa) sigma_- a^dagger and
 * the propagator is U(t) = exp(-i C2 t). U conserves the excitation number
 * N = n + [atom excited], so it is assembled exactly from 2x2 blocks on
 * {|g,N>, |e,N-1>}:
 *
 *   <g,N|U|g,N>     = cos(sqrt(N)|kappa|t)
 *   <e,N-1|U|e,N-1> = cos(sqrt(N)|kappa|t)
 *   <e,N-1|U|g,N>   = -i (kappa/|kappa|) sin(sqrt(N)|kappa|t)
 *   <g,N|U|e,N-1>   = -i (conj(kappa)/|kappa|) sin(sqrt(N)|kappa|t)
 *
 * |g,0> is a 1x1 identity block. In the truncated space |e,n_max> has no
 * partner (|g,n_max+1> is not retained) and is left invariant, which is what
 * the truncated dense exponential does as well.
 *
 * At t = (2m+1) pi / (sqrt(2)|kappa|) the ground-state branch maps
 * |0> -> |0>, |1> -> d(m)|1>, |2> -> -|2>; the |1> photon leaks into
 * |e,0> with amplitude c(m).
 */
#pragma once

#include <vector>

#include "jcmsim/fock.hpp"

namespace jcmsim {

// |kappa| used for the cavity experiments discussed with the gate timings.
inline constexpr double kReferenceKappa = 1.0e6 / 70.0;  // s^-1

enum class AtomLevel { ground, excited };

struct AtomState {
  Complex g{1.0};
  Complex e{0.0};

  static AtomState ground() { return {1.0, 0.0}; }
  static AtomState excited() { return {0.0, 1.0}; }
  double norm_squared() const { return std::norm(g) + std::norm(e); }
};

// Atom (x) single field mode. Amplitudes are stored as the ground block
// |g,0..n_max> followed by the excited block |e,0..n_max>.
class AtomFieldState {
 public:
  explicit AtomFieldState(FockCutoff cutoff);
  AtomFieldState(FockCutoff cutoff, std::vector<Complex> amplitudes);

  // |atom> (x) |field>; field must be single-mode.
  static AtomFieldState product(const AtomState& atom, const MultiModeState& field);

  FockCutoff cutoff() const noexcept { return cutoff_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex g(int n) const { return amplitudes_.at(static_cast<std::size_t>(n)); }
  Complex e(int n) const { return amplitudes_.at(static_cast<std::size_t>(cutoff_.dim() + n)); }

  double norm_squared() const;

  // Unnormalized field state left after projecting the atom onto `level`.
  MultiModeState project(AtomLevel level) const;

  // Probability mass per excitation number N = 0..n_max+1.
  std::vector<double> excitation_weights() const;

 private:
  FockCutoff cutoff_;
  std::vector<Complex> amplitudes_;
};

struct JCMParams {
  double kappa_abs = kReferenceKappa;  // s^-1, > 0
  double kappa_phase = 0.0;            // radians
  double time = 0.0;                   // s, >= 0
};

AtomFieldState jcm_propagate(const AtomFieldState& s, const JCMParams& p);

// (2m+1) pi / (sqrt(2) |kappa|).
double ns_gate_time(double kappa_abs, int m);

struct SignShiftCoefficients {
  Complex c;  // amplitude of |e,0> from |g,1>
  double d;   // amplitude of |g,1> from |g,1>
};

SignShiftCoefficients cm_dm(int m, double kappa_phase = 0.0);

struct Table1Row {
  int m;
  double c_squared;
  double d;
};

// Rows m = 0..4.
std::vector<Table1Row> table1();

struct NSGateOptions {
  double kappa_abs = kReferenceKappa;
  double kappa_phase = 0.0;
};

struct NSGateResult {
  MultiModeState output;       // post-selected on |g>, renormalized
  double success_probability;  // atom found in |g>
  double failure_probability;  // atom found in |e>
  int m;
  Complex c_m;
  double d_m;
  bool compensating_phase;
};

// JCM realization of the NS gate on a normalized single-mode input. When
// `apply_compensating_phase` is set the (-1)^n phase shifter follows the
// cavity; it is needed whenever d(m) < 0 (m = 3 for example).
// Throws ZeroStateError if the ground-state branch has probability zero.
NSGateResult ns_gate(const MultiModeState& input, int m, bool apply_compensating_phase,
                     const NSGateOptions& options = {});

// a|0> + b|1> + c|2> -> a|0> + b|1> - c|2> on any mode. The state must have
// no support above two photons on that mode.
MultiModeState ns_gate_ideal(const MultiModeState& input, int mode = 0);

struct PostSelectedState {
  MultiModeState state;  // unnormalized
  double probability;
};

// Runs the cavity interaction on one mode of a multimode state with a fresh
// atom in |g>, and keeps the |g> branch (unnormalized). The optional
// compensating phase acts on the same mode.
PostSelectedState jcm_ns_on_mode(const MultiModeState& s, int mode, int m, bool apply_compensating_phase,
                                 const NSGateOptions& options = {});

}  // namespace jcmsim
