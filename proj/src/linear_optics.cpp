#include "jcmsim/linear_optics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jcmsim/errors.hpp"

namespace jcmsim {

namespace {

// Amplitudes over |p, N-p>, p = 0..N, for a fixed total photon number N.
using Sector = std::vector<double>;

// Applies (a_i^dag + sign * a_j^dag) / sqrt(2) to a sector of total N.
Sector add_photon(const Sector& v, double sign) {
  const int total = static_cast<int>(v.size()) - 1;
  Sector out(v.size() + 1, 0.0);
  for (int p = 0; p <= total; ++p) {
    const int q = total - p;
    const double a = v[static_cast<std::size_t>(p)] / std::numbers::sqrt2;
    out[static_cast<std::size_t>(p + 1)] += std::sqrt(p + 1.0) * a;
    out[static_cast<std::size_t>(p)] += sign * std::sqrt(q + 1.0) * a;
  }
  return out;
}

// images[n][m][p]: amplitude of |p, n+m-p> in the image of |n, m>, obtained
// by acting with the transformed creation operators on the vacuum.
std::vector<std::vector<Sector>> splitter_images(int n_max) {
  const auto dim = static_cast<std::size_t>(n_max + 1);
  std::vector<std::vector<Sector>> images(dim, std::vector<Sector>(dim));
  Sector plus{1.0};
  double n_fact = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      plus = add_photon(plus, +1.0);
      n_fact *= n;
    }
    Sector v = plus;
    double m_fact = 1.0;
    for (int m = 0; m <= n_max; ++m) {
      if (m > 0) {
        v = add_photon(v, -1.0);
        m_fact *= m;
      }
      Sector scaled = v;
      const double norm = 1.0 / std::sqrt(n_fact * m_fact);
      for (auto& x : scaled) x *= norm;
      images[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)] = std::move(scaled);
    }
  }
  return images;
}

void check_mode(const MultiModeState& s, int mode) {
  if (mode < 0 || mode >= s.mode_count()) {
    throw ModeIndexOutOfRange("mode " + std::to_string(mode) + " out of range for a " +
                              std::to_string(s.mode_count()) + "-mode state");
  }
}

bool other_modes_empty(const MultiModeState& s, std::size_t index, std::span<const int> allowed) {
  for (int k = 0; k < s.mode_count(); ++k) {
    bool is_allowed = false;
    for (int a : allowed) is_allowed = is_allowed || a == k;
    if (!is_allowed && s.occupation(index, k) != 0) return false;
  }
  return true;
}

}  // namespace

MultiModeState beam_splitter(const MultiModeState& s, BeamSplitterSpec spec, bool inverse) {
  check_mode(s, spec.mode_i);
  check_mode(s, spec.mode_j);
  if (spec.mode_i == spec.mode_j) throw InvalidArgument("beam splitter needs two distinct modes");

  const int n_max = s.n_max();
  const auto images = splitter_images(n_max);
  const std::size_t si = s.stride(spec.mode_i);
  const std::size_t sj = s.stride(spec.mode_j);
  const auto in = s.amplitudes();
  std::vector<Complex> out(in.size());

  for (std::size_t base = 0; base < in.size(); ++base) {
    if (s.occupation(base, spec.mode_i) != 0 || s.occupation(base, spec.mode_j) != 0) continue;
    for (int n = 0; n <= n_max; ++n) {
      for (int m = 0; m <= n_max; ++m) {
        const auto& image = images[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
        const int total = n + m;
        const std::size_t nm = base + static_cast<std::size_t>(n) * si + static_cast<std::size_t>(m) * sj;
        for (int p = std::max(0, total - n_max); p <= std::min(total, n_max); ++p) {
          const std::size_t pq =
              base + static_cast<std::size_t>(p) * si + static_cast<std::size_t>(total - p) * sj;
          const double coeff = image[static_cast<std::size_t>(p)];
          if (inverse) {
            out[nm] += coeff * in[pq];
          } else {
            out[pq] += coeff * in[nm];
          }
        }
      }
    }
  }
  return {s.mode_count(), s.cutoff(), std::move(out)};
}

MultiModeState phase_shifter(const MultiModeState& s, PhaseShifterSpec spec) {
  check_mode(s, spec.mode);
  const auto in = s.amplitudes();
  std::vector<Complex> out(in.begin(), in.end());
  std::vector<Complex> factor(static_cast<std::size_t>(s.cutoff().dim()));
  for (std::size_t n = 0; n < factor.size(); ++n) {
    factor[n] = std::polar(1.0, static_cast<double>(n) * spec.theta);
  }
  // Exact signs for the compensator, so theta = pi leaves no 1e-16 residue.
  if (spec.theta == std::numbers::pi) {
    for (std::size_t n = 0; n < factor.size(); ++n) factor[n] = (n % 2 == 0) ? 1.0 : -1.0;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] *= factor[static_cast<std::size_t>(s.occupation(i, spec.mode))];
  }
  return {s.mode_count(), s.cutoff(), std::move(out)};
}

CoherentSplitReport coherent_bs_law_check(Complex alpha, Complex beta, FockCutoff cutoff) {
  const auto input = tensor(coherent_state(alpha, cutoff), coherent_state(beta, cutoff));
  const auto split = beam_splitter(input, {0, 1});
  const Complex out1 = (alpha + beta) / std::numbers::sqrt2;
  const Complex out2 = (alpha - beta) / std::numbers::sqrt2;
  const auto expected = tensor(coherent_state(out1, cutoff), coherent_state(out2, cutoff));

  double deviation = 0.0;
  double truncated = 0.0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const auto occ = input.occupations_of(i);
    if (occ[0] + occ[1] <= cutoff.n_max()) {
      deviation += std::norm(split[i] - expected[i]);
    } else {
      truncated += std::norm(input[i]);
    }
  }
  return {out1, out2, std::sqrt(deviation), truncated};
}

MultiModeState encode_dual_rail(int bit, FockCutoff cutoff) {
  const int bits[] = {bit};
  return encode_logical(bits, cutoff);
}

MultiModeState encode_logical(std::span<const int> bits, FockCutoff cutoff) {
  std::vector<int> occ;
  for (int b : bits) {
    if (b != 0 && b != 1) throw InvalidArgument("logical bit must be 0 or 1, got " + std::to_string(b));
    occ.push_back(b);
    occ.push_back(1 - b);
  }
  if (occ.empty()) throw InvalidArgument("need at least one qubit");
  return number_state(occ, cutoff);
}

DecodedQubit decode_dual_rail(const MultiModeState& s, DualRailQubit qubit, double tolerance) {
  check_mode(s, qubit.first);
  check_mode(s, qubit.second);
  if (qubit.first == qubit.second) throw InvalidArgument("dual-rail qubit needs two distinct modes");
  const double total = s.norm_squared();
  if (total == 0.0) throw ZeroStateError("cannot decode a zero state");

  const int pair[] = {qubit.first, qubit.second};
  Complex zero{}, one{};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!other_modes_empty(s, i, pair)) continue;
    const int a = s.occupation(i, qubit.first);
    const int b = s.occupation(i, qubit.second);
    if (a == 0 && b == 1) zero = s[i];
    if (a == 1 && b == 0) one = s[i];
  }
  const double leakage = std::max(0.0, 1.0 - (std::norm(zero) + std::norm(one)) / total);
  if (leakage > tolerance) {
    throw DecodeError("state leaves the dual-rail code space (leakage " + std::to_string(leakage) + ")",
                      leakage);
  }
  return {zero, one, leakage};
}

DecodedRegister decode_logical(const MultiModeState& s, double tolerance) {
  if (s.mode_count() % 2 != 0) throw InvalidArgument("dual-rail register needs an even number of modes");
  const int qubits = s.mode_count() / 2;
  const double total = s.norm_squared();
  if (total == 0.0) throw ZeroStateError("cannot decode a zero state");

  std::vector<Complex> amps(std::size_t{1} << qubits);
  std::vector<int> occ(static_cast<std::size_t>(s.mode_count()));
  for (std::size_t code = 0; code < amps.size(); ++code) {
    for (int q = 0; q < qubits; ++q) {
      const int bit = static_cast<int>((code >> (qubits - 1 - q)) & 1U);
      occ[static_cast<std::size_t>(2 * q)] = bit;
      occ[static_cast<std::size_t>(2 * q + 1)] = 1 - bit;
    }
    amps[code] = s.amplitude(occ);
  }
  double kept = 0.0;
  for (Complex a : amps) kept += std::norm(a);
  const double leakage = std::max(0.0, 1.0 - kept / total);
  if (leakage > tolerance) {
    throw DecodeError("state leaves the dual-rail code space (leakage " + std::to_string(leakage) + ")",
                      leakage);
  }
  return {std::move(amps), leakage};
}

CsfResult csf_gate(const MultiModeState& s, const NSMode& mode) {
  if (s.mode_count() != 4) throw DimensionMismatch("csf_gate acts on four modes (x1, x2, y1, y2)");
  if (!s.is_normalized()) throw InvalidArgument("csf_gate input must be normalized");
  constexpr int kX1 = 0;
  constexpr int kY1 = 2;

  const auto mixed = beam_splitter(s, {kX1, kY1});
  if (std::holds_alternative<IdealNS>(mode)) {
    const auto flipped = ns_gate_ideal(ns_gate_ideal(mixed, kX1), kY1);
    return {beam_splitter(flipped, {kX1, kY1}, /*inverse=*/true), 1.0, 1.0, 1.0};
  }

  const auto& jcm = std::get<JcmNS>(mode);
  const bool compensate = cm_dm(jcm.m, jcm.options.kappa_phase).d < 0.0;
  const auto first = jcm_ns_on_mode(mixed, kX1, jcm.m, compensate, jcm.options);
  if (first.probability == 0.0) throw ZeroStateError("NS1 atom never found in |g>");
  const auto second = jcm_ns_on_mode(first.state, kY1, jcm.m, compensate, jcm.options);
  if (second.probability == 0.0) throw ZeroStateError("NS2 atom never found in |g>");

  const auto out = beam_splitter(second.state, {kX1, kY1}, /*inverse=*/true);
  return {renormalize(out), first.probability * second.probability, first.probability, second.probability};
}

}  // namespace jcmsim
