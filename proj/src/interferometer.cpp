#include "jcmsim/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "jcmsim/errors.hpp"
#include "jcmsim/linear_optics.hpp"

namespace jcmsim {

namespace {

constexpr double kThirdPi = std::numbers::pi / 3.0;

double mean_of(const std::vector<double>& p) {
  double acc = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) acc += static_cast<double>(n) * p[n];
  return acc;
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

bool resolve_compensation(Compensation c, int m, double kappa_phase) {
  switch (c) {
    case Compensation::always:
      return true;
    case Compensation::never:
      return false;
    case Compensation::automatic:
      break;
  }
  return cm_dm(m, kappa_phase).d < 0.0;
}

CavityOutput cavity_ns_output(Complex alpha, int m, FockCutoff cutoff, bool apply_compensating_phase,
                              const NSGateOptions& options) {
  const auto input = renormalize(coherent_state(alpha, cutoff));
  auto gate = ns_gate(input, m, apply_compensating_phase, options);
  double outside = 0.0;
  for (std::size_t n = 3; n < gate.output.size(); ++n) outside += std::norm(gate.output[n]);
  return {std::move(gate.output), alpha, m, gate.success_probability, outside};
}

MultiModeState cat_reference(Complex alpha, bool exact_norm, FockCutoff cutoff) {
  const auto plus = coherent_state(std::polar(1.0, kThirdPi) * alpha, cutoff);
  const auto minus = coherent_state(std::polar(1.0, -kThirdPi) * alpha, cutoff);
  const auto cat = Complex{0.5} * (plus + minus);
  return exact_norm ? renormalize(cat) : cat;
}

double reference_infidelity(const MultiModeState& reference, const MultiModeState& psi) {
  return 1.0 - std::norm(overlap(reference, psi));
}

std::array<Complex, 4> f_functions(double theta) {
  const Complex e = std::polar(1.0, theta);
  const Complex w = std::polar(1.0, kThirdPi);
  const Complex wbar = std::conj(w);
  return {(e + 1.0) * w + (e - 1.0), (e - 1.0) * w + (e + 1.0), (e + 1.0) * wbar + (e - 1.0),
          (e - 1.0) * wbar + (e + 1.0)};
}

InterferometerResponse interferometer_response(Complex alpha, double theta) {
  const auto F = f_functions(theta);
  return {theta, F, std::norm(alpha * F[0] / 2.0), std::norm(alpha * F[1] / 2.0)};
}

MultiModeState mach_zehnder(const MultiModeState& input_a1, Complex alpha_a2, double theta) {
  if (input_a1.mode_count() != 1) throw DimensionMismatch("mach_zehnder expects a single-mode a1 input");
  auto s = tensor(input_a1, coherent_state(alpha_a2, input_a1.cutoff()));
  s = beam_splitter(s, {0, 1});
  s = phase_shifter(s, {0, theta});
  return beam_splitter(s, {0, 1});
}

MultiModeState branch_model_state(Complex alpha, double theta, FockCutoff cutoff) {
  const auto F = f_functions(theta);
  const auto branch = [&](Complex f1, Complex f2) {
    return tensor(coherent_state(alpha * f1 / 2.0, cutoff), coherent_state(alpha * f2 / 2.0, cutoff));
  };
  return Complex{0.5} * (branch(F[0], F[1]) + branch(F[2], F[3]));
}

double DetectorStatistics::mean_d1() const { return mean_of(d1); }
double DetectorStatistics::mean_d2() const { return mean_of(d2); }

DetectorStatistics detector_statistics(const MultiModeState& two_mode) {
  if (two_mode.mode_count() != 2) throw DimensionMismatch("detector_statistics expects a two-mode state");
  return {partial_trace_probabilities(two_mode, 0), partial_trace_probabilities(two_mode, 1),
          joint_count_probabilities(two_mode, 0, 1), two_mode.cutoff().dim()};
}

double poisson_pmf(int n, double mu) {
  if (n < 0) throw InvalidArgument("poisson_pmf: n must be >= 0");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw InvalidArgument("poisson_pmf: mu must be >= 0");
  if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
}

MultiModeState experiment_state(const ExperimentConfig& config) {
  const bool compensate = resolve_compensation(config.compensation, config.m, config.ns_options.kappa_phase);
  const auto cavity = cavity_ns_output(config.alpha, config.m, config.cutoff, compensate, config.ns_options);
  return mach_zehnder(cavity.state, config.alpha, config.theta);
}

ConditionedReport conditional_run(const ConditionalRunConfig& config) {
  if (config.shots == 0) throw InvalidArgument("shots must be >= 1");

  const auto exact = detector_statistics(experiment_state(config.experiment));
  const auto dim = static_cast<std::size_t>(exact.dim);

  std::vector<double> cdf(exact.joint.size());
  double running = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    running += exact.joint[i];
    cdf[i] = running;
  }

  ConditionedReport report{config, exact, std::vector<std::uint64_t>(dim), std::vector<std::uint64_t>(dim),
                           0, 0.0, 0.0, 0.0, std::vector<std::uint64_t>(dim), std::vector<double>(dim)};

  std::mt19937_64 rng(config.seed);
  for (std::uint64_t shot = 0; shot < config.shots; ++shot) {
    const double u = uniform01(rng) * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    const auto cell = static_cast<std::size_t>(it - cdf.begin());
    const std::size_t n1 = cell / dim;
    const std::size_t n2 = cell % dim;
    ++report.d1_histogram[n1];
    ++report.d2_histogram[n2];
    if (n2 == 1) {
      ++report.d2_single_count;
      ++report.conditioned_d1_histogram[n1];
    }
  }

  report.d2_single_frequency = static_cast<double>(report.d2_single_count) / static_cast<double>(config.shots);
  report.d2_single_exact = exact.d2[1];
  const auto response = interferometer_response(config.experiment.alpha, config.experiment.theta);
  report.d2_single_leading = poisson_pmf(1, response.mu1) / 4.0;
  if (exact.d2[1] > 0.0) {
    for (std::size_t n1 = 0; n1 < dim; ++n1) {
      report.conditioned_d1_exact[n1] = exact.joint_at(static_cast<int>(n1), 1) / exact.d2[1];
    }
  }
  return report;
}

}  // namespace jcmsim
