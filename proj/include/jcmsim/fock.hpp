/*
 * Truncated Fock space for up to four bosonic modes.
 *
 * A MultiModeState is a dense amplitude vector over the occupation
 * multi-indices (n_0, ..., n_{k-1}) with every n_i <= n_max. Storage is
 * row-major with mode 0 the slowest-varying index, so for two modes the
 * amplitude of |n_0, n_1> sits at n_0 * (n_max + 1) + n_1.
 *
 * States are values: every operation returns a new state.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace jcmsim {

using Complex = std::complex<double>;

inline constexpr int kDefaultNMax = 12;
inline constexpr int kMaxModes = 4;

// Tolerance for algebraic identities (normalization, orthonormality).
inline constexpr double kExactTolerance = 1e-9;

// Maximum photon number retained per mode. n_max >= 2 so |2> is representable.
class FockCutoff {
 public:
  explicit FockCutoff(int n_max = kDefaultNMax);

  int n_max() const noexcept { return n_max_; }
  int dim() const noexcept { return n_max_ + 1; }

  friend bool operator==(FockCutoff, FockCutoff) = default;

 private:
  int n_max_;
};

class MultiModeState {
 public:
  // Zero vector.
  MultiModeState(int mode_count, FockCutoff cutoff);
  MultiModeState(int mode_count, FockCutoff cutoff, std::vector<Complex> amplitudes);

  int mode_count() const noexcept { return mode_count_; }
  FockCutoff cutoff() const noexcept { return cutoff_; }
  int n_max() const noexcept { return cutoff_.n_max(); }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t index) const { return amplitudes_[index]; }
  Complex amplitude(std::span<const int> occupations) const;

  std::size_t index_of(std::span<const int> occupations) const;
  std::vector<int> occupations_of(std::size_t index) const;
  int occupation(std::size_t index, int mode) const;
  // Number of flat-index steps between consecutive occupations of `mode`.
  std::size_t stride(int mode) const;

  double norm_squared() const;
  double norm() const;
  bool is_normalized(double tol = kExactTolerance) const;

  MultiModeState operator+(const MultiModeState& other) const;
  MultiModeState operator-(const MultiModeState& other) const;
  friend MultiModeState operator*(Complex factor, const MultiModeState& s);

 private:
  int mode_count_;
  FockCutoff cutoff_;
  std::vector<Complex> amplitudes_;
};

MultiModeState vacuum(int mode_count, FockCutoff cutoff = FockCutoff{});

// Throws OccupationExceedsCutoff if any occupation is above n_max.
MultiModeState number_state(std::span<const int> occupations, FockCutoff cutoff = FockCutoff{});
MultiModeState number_state(std::initializer_list<int> occupations, FockCutoff cutoff = FockCutoff{});

// Single-mode coherent state truncated at n_max, *not* renormalized: the
// missing tail weight shows up as 1 - norm_squared().
MultiModeState coherent_state(Complex alpha, FockCutoff cutoff = FockCutoff{});

// True when |alpha|^2 > n_max / 4, i.e. the truncation deficit is no longer
// negligible. coherent_state() reports this through the diagnostic sink.
bool coherent_truncation_risk(Complex alpha, FockCutoff cutoff);

// <a|b>, conjugating a. Throws DimensionMismatch.
Complex overlap(const MultiModeState& a, const MultiModeState& b);

// Throws ZeroStateError for the zero vector. Global phase is preserved.
MultiModeState renormalize(const MultiModeState& s);

// Throws CutoffMismatch, or InvalidArgument when the result exceeds kMaxModes.
MultiModeState tensor(const MultiModeState& a, const MultiModeState& b);

// P(n) for the photon count on `mode`, n = 0..n_max. For an unnormalized
// state the probabilities are divided by the squared norm.
std::vector<double> partial_trace_probabilities(const MultiModeState& s, int mode);

// Joint P(n_a, n_b), row-major with n_a slowest; size (n_max+1)^2.
std::vector<double> joint_count_probabilities(const MultiModeState& s, int mode_a, int mode_b);

// Receives non-fatal warnings (currently: coherent-state truncation risk).
// The default sink writes to stderr. Passing an empty function restores it.
using DiagnosticSink = std::function<void(std::string_view)>;
void set_diagnostic_sink(DiagnosticSink sink);
void emit_diagnostic(std::string_view message);

}  // namespace jcmsim
