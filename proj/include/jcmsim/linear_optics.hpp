/*
 * 50:50 beam splitters, phase shifters, dual-rail qubits and the conditional
 * sign-flip (CSF) network built from two splitters and two NS gates.
 *
 * Beam splitter convention, on creation operators of the two modes (i, j):
 *
 *   a_i^dag -> (a_i^dag + a_j^dag) / sqrt(2)
 *   a_j^dag -> (a_i^dag - a_j^dag) / sqrt(2)
 *
 * The splitter conserves the photon number of the pair, so amplitudes whose
 * image needs more than n_max photons in one mode are dropped; states whose
 * pair occupations sum to at most n_max are mapped exactly.
 */
#pragma once

#include <array>
#include <variant>
#include <vector>

#include "jcmsim/fock.hpp"
#include "jcmsim/jcm.hpp"

namespace jcmsim {

struct BeamSplitterSpec {
  int mode_i = 0;
  int mode_j = 1;
};

struct PhaseShifterSpec {
  int mode = 0;
  double theta = 0.0;
};

// A logical qubit carried by one photon in two paths:
// |0L> = |0>_first |1>_second, |1L> = |1>_first |0>_second.
struct DualRailQubit {
  int first = 0;
  int second = 1;
};

// `inverse` applies the adjoint of the forward transformation.
MultiModeState beam_splitter(const MultiModeState& s, BeamSplitterSpec spec, bool inverse = false);

// |n> -> e^{i n theta} |n> on spec.mode. theta = pi gives (-1)^n.
MultiModeState phase_shifter(const MultiModeState& s, PhaseShifterSpec spec);

struct CoherentSplitReport {
  Complex expected_a1;  // (alpha + beta) / sqrt(2)
  Complex expected_a2;  // (alpha - beta) / sqrt(2)
  // || BS(|alpha>|beta>) - |expected_a1>|expected_a2> || restricted to the
  // sectors with total photon number <= n_max (the exactly represented part).
  double deviation_norm;
  // Weight of |alpha>|beta> lost to truncation at the splitter.
  double truncated_weight;
};

CoherentSplitReport coherent_bs_law_check(Complex alpha, Complex beta, FockCutoff cutoff = FockCutoff{});

// One qubit on two modes.
MultiModeState encode_dual_rail(int bit, FockCutoff cutoff = FockCutoff{});
// k qubits on 2k modes; qubit q uses modes (2q, 2q+1).
MultiModeState encode_logical(std::span<const int> bits, FockCutoff cutoff = FockCutoff{});

struct DecodedQubit {
  Complex zero;
  Complex one;
  double leakage;
};

// Single qubit; every mode outside the pair must be empty for an amplitude
// to count as logical. Throws DecodeError when leakage > tolerance.
DecodedQubit decode_dual_rail(const MultiModeState& s, DualRailQubit qubit = {}, double tolerance = kExactTolerance);

struct DecodedRegister {
  std::vector<Complex> amplitudes;  // index = sum_q bit_q << (k-1-q), qubit 0 most significant
  double leakage;
};

// Register of mode_count/2 qubits on pairs (0,1), (2,3), ...
DecodedRegister decode_logical(const MultiModeState& s, double tolerance = kExactTolerance);

struct IdealNS {};
struct JcmNS {
  int m = 3;
  NSGateOptions options{};
};
using NSMode = std::variant<IdealNS, JcmNS>;

struct CsfResult {
  MultiModeState output;       // renormalized when post-selected
  double success_probability;  // 1 for the ideal network
  double atom1_ground_probability;
  double atom2_ground_probability;  // conditional on atom 1 in |g>
};

// Conditional sign-flip on modes (x1, x2, y1, y2) = (0, 1, 2, 3): BS1 on
// (x1, y1), NS on x1 and y1, then BS1's inverse. In JCM mode each NS uses its
// own atom post-selected in |g>, with the (-1)^n compensator when d(m) < 0.
CsfResult csf_gate(const MultiModeState& s, const NSMode& mode);

}  // namespace jcmsim
