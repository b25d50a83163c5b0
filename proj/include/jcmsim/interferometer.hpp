/*
 * Coherent-light check of the cavity NS gate: the post-selected cavity
 * output, the two-coherent-state reference it approximates, a Mach-Zehnder
 * interferometer (BS, phase shifter on a1, BS) and photon counting at D1/D2.
 */
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "jcmsim/fock.hpp"
#include "jcmsim/jcm.hpp"

namespace jcmsim {

struct CavityOutput {
  MultiModeState state;  // renormalized
  Complex alpha;
  int m;
  double success_probability;
  double error_mass;  // weight of the output outside span{|0>,|1>,|2>}
};

// Cavity fed with |alpha> (truncated, then renormalized), atom post-selected
// in |g>. Without the compensating phase the |1> coefficient is d(m) alpha.
CavityOutput cavity_ns_output(Complex alpha, int m, FockCutoff cutoff = FockCutoff{},
                              bool apply_compensating_phase = false, const NSGateOptions& options = {});

// (1/2)(|e^{i pi/3} alpha> + |e^{-i pi/3} alpha>), or the same superposition
// scaled to unit norm when `exact_norm` is set.
MultiModeState cat_reference(Complex alpha, bool exact_norm, FockCutoff cutoff = FockCutoff{});

// 1 - |<reference|psi>|^2. With the unnormalized (1/2)-prefactor reference
// this is 1 - (1/4)|(<e^{i pi/3} alpha| + <e^{-i pi/3} alpha|)|psi>|^2.
double reference_infidelity(const MultiModeState& reference, const MultiModeState& psi);

// F_1..F_4 at phase theta.
std::array<Complex, 4> f_functions(double theta);

struct InterferometerResponse {
  double theta;
  std::array<Complex, 4> F;
  double mu1;  // |alpha F_1 / 2|^2 = |alpha F_4 / 2|^2
  double mu2;  // |alpha F_2 / 2|^2 = |alpha F_3 / 2|^2
};

InterferometerResponse interferometer_response(Complex alpha, double theta);

// |input> on a1, |alpha_a2> on a2, then BS1, phase theta on a1, BS2. Both
// splitters use the forward convention. Returns the two-mode output (a1, a2).
MultiModeState mach_zehnder(const MultiModeState& input_a1, Complex alpha_a2, double theta);

// The two-branch coherent picture of the interferometer output:
// (1/2)|alpha F1/2>|alpha F2/2> + (1/2)|alpha F3/2>|alpha F4/2>.
MultiModeState branch_model_state(Complex alpha, double theta, FockCutoff cutoff = FockCutoff{});

struct DetectorStatistics {
  std::vector<double> d1;     // P(n) at D1 (mode a1)
  std::vector<double> d2;     // P(n) at D2 (mode a2)
  std::vector<double> joint;  // P(n1, n2), row-major, n1 slowest
  int dim;

  double joint_at(int n1, int n2) const {
    return joint[static_cast<std::size_t>(n1) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(n2)];
  }
  double mean_d1() const;
  double mean_d2() const;
};

DetectorStatistics detector_statistics(const MultiModeState& two_mode);

// e^{-mu} mu^n / n!
double poisson_pmf(int n, double mu);

enum class Compensation {
  automatic,  // apply the (-1)^n shifter exactly when d(m) < 0
  always,
  never,
};

bool resolve_compensation(Compensation c, int m, double kappa_phase = 0.0);

struct ExperimentConfig {
  Complex alpha{0.5};
  int m = 3;
  double theta = 1.5707963267948966;  // pi/2
  FockCutoff cutoff{};
  Compensation compensation = Compensation::automatic;
  NSGateOptions ns_options{};
};

// Full Fock-space interferometer output for the cavity-fed experiment; the
// reference arm a2 carries |alpha>.
MultiModeState experiment_state(const ExperimentConfig& config);

struct ConditionalRunConfig {
  ExperimentConfig experiment{};
  std::uint64_t shots = 100000;
  std::uint64_t seed = 0;
};

struct ConditionedReport {
  ConditionalRunConfig config;
  DetectorStatistics exact;
  std::vector<std::uint64_t> d1_histogram;
  std::vector<std::uint64_t> d2_histogram;
  std::uint64_t d2_single_count;  // shots with exactly one photon at D2
  double d2_single_frequency;
  double d2_single_exact;        // exact P(D2 = 1)
  double d2_single_leading;      // P(1, mu1) / 4, the one-branch estimate
  std::vector<std::uint64_t> conditioned_d1_histogram;  // D1 counts given D2 = 1
  std::vector<double> conditioned_d1_exact;              // exact P(n1 | D2 = 1)
};

// Monte Carlo photon counting: each shot draws (n1, n2) from the exact joint
// distribution. Deterministic for a given seed. Throws InvalidArgument for
// shots == 0.
ConditionedReport conditional_run(const ConditionalRunConfig& config);

}  // namespace jcmsim
