#include "jcmsim/jcm.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jcmsim/errors.hpp"
#include "jcmsim/linear_optics.hpp"

namespace jcmsim {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_m(int m) {
  if (m < 0) throw InvalidArgument("m must be a non-negative integer, got " + std::to_string(m));
}

void check_params(const JCMParams& p) {
  if (!(p.kappa_abs > 0.0) || !std::isfinite(p.kappa_abs)) {
    throw InvalidArgument("kappa_abs must be positive and finite");
  }
  if (!(p.time >= 0.0) || !std::isfinite(p.time)) {
    throw InvalidArgument("interaction time must be non-negative and finite");
  }
  if (!std::isfinite(p.kappa_phase)) throw InvalidArgument("kappa_phase must be finite");
}

}  // namespace

AtomFieldState::AtomFieldState(FockCutoff cutoff)
    : cutoff_(cutoff), amplitudes_(2 * static_cast<std::size_t>(cutoff.dim())) {}

AtomFieldState::AtomFieldState(FockCutoff cutoff, std::vector<Complex> amplitudes)
    : cutoff_(cutoff), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != 2 * static_cast<std::size_t>(cutoff.dim())) {
    throw DimensionMismatch("atom-field state needs " + std::to_string(2 * cutoff.dim()) +
                            " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
}

AtomFieldState AtomFieldState::product(const AtomState& atom, const MultiModeState& field) {
  if (field.mode_count() != 1) {
    throw DimensionMismatch("atom-field product needs a single-mode field, got " +
                            std::to_string(field.mode_count()) + " modes");
  }
  const auto dim = static_cast<std::size_t>(field.cutoff().dim());
  std::vector<Complex> amps(2 * dim);
  for (std::size_t n = 0; n < dim; ++n) {
    amps[n] = atom.g * field[n];
    amps[dim + n] = atom.e * field[n];
  }
  return {field.cutoff(), std::move(amps)};
}

double AtomFieldState::norm_squared() const {
  double acc = 0.0;
  for (Complex a : amplitudes_) acc += std::norm(a);
  return acc;
}

MultiModeState AtomFieldState::project(AtomLevel level) const {
  const auto dim = static_cast<std::size_t>(cutoff_.dim());
  const std::size_t offset = level == AtomLevel::ground ? 0 : dim;
  std::vector<Complex> field(amplitudes_.begin() + static_cast<std::ptrdiff_t>(offset),
                             amplitudes_.begin() + static_cast<std::ptrdiff_t>(offset + dim));
  return {1, cutoff_, std::move(field)};
}

std::vector<double> AtomFieldState::excitation_weights() const {
  const auto dim = static_cast<std::size_t>(cutoff_.dim());
  std::vector<double> w(dim + 1, 0.0);
  for (std::size_t n = 0; n < dim; ++n) {
    w[n] += std::norm(amplitudes_[n]);
    w[n + 1] += std::norm(amplitudes_[dim + n]);
  }
  return w;
}

AtomFieldState jcm_propagate(const AtomFieldState& s, const JCMParams& p) {
  check_params(p);
  const int n_max = s.cutoff().n_max();
  const auto dim = static_cast<std::size_t>(s.cutoff().dim());
  const auto in = s.amplitudes();
  std::vector<Complex> out(in.begin(), in.end());

  const Complex phase = std::polar(1.0, p.kappa_phase);
  for (int N = 1; N <= n_max; ++N) {
    const double angle = std::sqrt(static_cast<double>(N)) * p.kappa_abs * p.time;
    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    const std::size_t ig = static_cast<std::size_t>(N);            // |g,N>
    const std::size_t ie = dim + static_cast<std::size_t>(N - 1);  // |e,N-1>
    const Complex g = in[ig];
    const Complex e = in[ie];
    out[ig] = c * g - kI * std::conj(phase) * sn * e;
    out[ie] = -kI * phase * sn * g + c * e;
  }
  // |g,0> and the partnerless |e,n_max> are untouched.
  return {s.cutoff(), std::move(out)};
}

double ns_gate_time(double kappa_abs, int m) {
  check_m(m);
  if (!(kappa_abs > 0.0) || !std::isfinite(kappa_abs)) {
    throw InvalidArgument("kappa_abs must be positive and finite");
  }
  return (2.0 * m + 1.0) * std::numbers::pi / (std::numbers::sqrt2 * kappa_abs);
}

SignShiftCoefficients cm_dm(int m, double kappa_phase) {
  check_m(m);
  const double angle = (2.0 * m + 1.0) * std::numbers::pi / std::numbers::sqrt2;
  return {-kI * std::polar(1.0, kappa_phase) * std::sin(angle), std::cos(angle)};
}

std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  for (int m = 0; m <= 4; ++m) {
    const auto [c, d] = cm_dm(m);
    rows.push_back({m, std::norm(c), d});
  }
  return rows;
}

PostSelectedState jcm_ns_on_mode(const MultiModeState& s, int mode, int m, bool apply_compensating_phase,
                                 const NSGateOptions& options) {
  if (mode < 0 || mode >= s.mode_count()) {
    throw ModeIndexOutOfRange("mode " + std::to_string(mode) + " out of range");
  }
  const JCMParams params{options.kappa_abs, options.kappa_phase, ns_gate_time(options.kappa_abs, m)};
  const double in_norm = s.norm_squared();
  if (in_norm == 0.0) throw ZeroStateError("NS gate applied to a zero state");

  const auto dim = static_cast<std::size_t>(s.cutoff().dim());
  const std::size_t stride = s.stride(mode);
  const auto in = s.amplitudes();
  std::vector<Complex> out(in.size());
  std::vector<Complex> slice(dim);

  // Every flat index whose `mode` occupation is zero starts one slice.
  for (std::size_t base = 0; base < in.size(); ++base) {
    if (s.occupation(base, mode) != 0) continue;
    for (std::size_t n = 0; n < dim; ++n) slice[n] = in[base + n * stride];
    const auto joint = AtomFieldState::product(AtomState::ground(), MultiModeState(1, s.cutoff(), slice));
    const auto kept = jcm_propagate(joint, params).project(AtomLevel::ground);
    for (std::size_t n = 0; n < dim; ++n) out[base + n * stride] = kept[n];
  }

  MultiModeState result(s.mode_count(), s.cutoff(), std::move(out));
  if (apply_compensating_phase) {
    result = phase_shifter(result, {mode, std::numbers::pi});
  }
  const double prob = result.norm_squared() / in_norm;
  return {std::move(result), prob};
}

NSGateResult ns_gate(const MultiModeState& input, int m, bool apply_compensating_phase,
                     const NSGateOptions& options) {
  if (input.mode_count() != 1) {
    throw DimensionMismatch("ns_gate acts on a single-mode state");
  }
  if (!input.is_normalized()) throw InvalidArgument("ns_gate input must be normalized");
  auto kept = jcm_ns_on_mode(input, 0, m, apply_compensating_phase, options);
  if (kept.probability == 0.0) {
    throw ZeroStateError("atom is never found in |g>; NS gate output undefined");
  }
  const auto [c, d] = cm_dm(m, options.kappa_phase);
  return NSGateResult{renormalize(kept.state),
                      kept.probability,
                      1.0 - kept.probability,
                      m,
                      c,
                      d,
                      apply_compensating_phase};
}

MultiModeState ns_gate_ideal(const MultiModeState& input, int mode) {
  const auto p = partial_trace_probabilities(input, mode);
  double above = 0.0;
  for (std::size_t n = 3; n < p.size(); ++n) above += p[n];
  if (above > 1e-12) {
    throw InvalidArgument("ideal NS gate is defined on span{|0>,|1>,|2>}; state has weight " +
                          std::to_string(above) + " above two photons");
  }
  const auto in = input.amplitudes();
  std::vector<Complex> out(in.begin(), in.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (input.occupation(i, mode) == 2) out[i] = -out[i];
  }
  return {input.mode_count(), input.cutoff(), std::move(out)};
}

}  // namespace jcmsim
