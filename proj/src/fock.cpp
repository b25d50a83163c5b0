#include "jcmsim/fock.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "jcmsim/errors.hpp"

namespace jcmsim {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_mode_count(int mode_count) {
  if (mode_count < 1 || mode_count > kMaxModes) {
    throw InvalidArgument("mode_count must be in [1, " + std::to_string(kMaxModes) + "], got " +
                          std::to_string(mode_count));
  }
}

void check_mode(const MultiModeState& s, int mode) {
  if (mode < 0 || mode >= s.mode_count()) {
    throw ModeIndexOutOfRange("mode " + std::to_string(mode) + " out of range for a " +
                              std::to_string(s.mode_count()) + "-mode state");
  }
}

void check_same_space(const MultiModeState& a, const MultiModeState& b) {
  if (a.mode_count() != b.mode_count() || a.cutoff() != b.cutoff()) {
    throw DimensionMismatch("states live in different spaces: (" + std::to_string(a.mode_count()) +
                            " modes, n_max " + std::to_string(a.n_max()) + ") vs (" +
                            std::to_string(b.mode_count()) + " modes, n_max " +
                            std::to_string(b.n_max()) + ")");
  }
}

std::mutex g_sink_mutex;
DiagnosticSink g_sink;

}  // namespace

FockCutoff::FockCutoff(int n_max) : n_max_(n_max) {
  if (n_max < 2) {
    throw InvalidArgument("n_max must be >= 2, got " + std::to_string(n_max));
  }
}

MultiModeState::MultiModeState(int mode_count, FockCutoff cutoff)
    : mode_count_(mode_count), cutoff_(cutoff) {
  check_mode_count(mode_count);
  amplitudes_.assign(ipow(static_cast<std::size_t>(cutoff.dim()), mode_count), Complex{});
}

MultiModeState::MultiModeState(int mode_count, FockCutoff cutoff, std::vector<Complex> amplitudes)
    : mode_count_(mode_count), cutoff_(cutoff), amplitudes_(std::move(amplitudes)) {
  check_mode_count(mode_count);
  const std::size_t expected = ipow(static_cast<std::size_t>(cutoff.dim()), mode_count);
  if (amplitudes_.size() != expected) {
    throw DimensionMismatch("expected " + std::to_string(expected) + " amplitudes, got " +
                            std::to_string(amplitudes_.size()));
  }
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InvalidArgument("non-finite amplitude");
    }
  }
}

std::size_t MultiModeState::stride(int mode) const {
  return ipow(static_cast<std::size_t>(cutoff_.dim()), mode_count_ - 1 - mode);
}

std::size_t MultiModeState::index_of(std::span<const int> occupations) const {
  if (static_cast<int>(occupations.size()) != mode_count_) {
    throw DimensionMismatch("expected " + std::to_string(mode_count_) + " occupations, got " +
                            std::to_string(occupations.size()));
  }
  std::size_t index = 0;
  for (int n : occupations) {
    if (n < 0 || n > cutoff_.n_max()) {
      throw OccupationExceedsCutoff("occupation " + std::to_string(n) + " outside [0, " +
                                    std::to_string(cutoff_.n_max()) + "]");
    }
    index = index * static_cast<std::size_t>(cutoff_.dim()) + static_cast<std::size_t>(n);
  }
  return index;
}

std::vector<int> MultiModeState::occupations_of(std::size_t index) const {
  std::vector<int> occ(static_cast<std::size_t>(mode_count_));
  const auto dim = static_cast<std::size_t>(cutoff_.dim());
  for (int k = mode_count_ - 1; k >= 0; --k) {
    occ[static_cast<std::size_t>(k)] = static_cast<int>(index % dim);
    index /= dim;
  }
  return occ;
}

int MultiModeState::occupation(std::size_t index, int mode) const {
  return static_cast<int>((index / stride(mode)) % static_cast<std::size_t>(cutoff_.dim()));
}

Complex MultiModeState::amplitude(std::span<const int> occupations) const {
  return amplitudes_[index_of(occupations)];
}

double MultiModeState::norm_squared() const {
  return std::accumulate(amplitudes_.begin(), amplitudes_.end(), 0.0,
                         [](double acc, Complex a) { return acc + std::norm(a); });
}

double MultiModeState::norm() const { return std::sqrt(norm_squared()); }

bool MultiModeState::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

MultiModeState MultiModeState::operator+(const MultiModeState& other) const {
  check_same_space(*this, other);
  std::vector<Complex> out(amplitudes_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.amplitudes_[i];
  return {mode_count_, cutoff_, std::move(out)};
}

MultiModeState MultiModeState::operator-(const MultiModeState& other) const {
  return *this + Complex{-1.0} * other;
}

MultiModeState operator*(Complex factor, const MultiModeState& s) {
  std::vector<Complex> out(s.amplitudes_);
  for (auto& a : out) a *= factor;
  return {s.mode_count_, s.cutoff_, std::move(out)};
}

MultiModeState vacuum(int mode_count, FockCutoff cutoff) {
  MultiModeState zero(mode_count, cutoff);
  std::vector<Complex> amps(zero.size());
  amps[0] = 1.0;
  return {mode_count, cutoff, std::move(amps)};
}

MultiModeState number_state(std::span<const int> occupations, FockCutoff cutoff) {
  const int modes = static_cast<int>(occupations.size());
  MultiModeState zero(modes, cutoff);
  std::vector<Complex> amps(zero.size());
  amps[zero.index_of(occupations)] = 1.0;
  return {modes, cutoff, std::move(amps)};
}

MultiModeState number_state(std::initializer_list<int> occupations, FockCutoff cutoff) {
  return number_state(std::span<const int>(occupations.begin(), occupations.size()), cutoff);
}

bool coherent_truncation_risk(Complex alpha, FockCutoff cutoff) {
  return std::norm(alpha) > cutoff.n_max() / 4.0;
}

MultiModeState coherent_state(Complex alpha, FockCutoff cutoff) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw InvalidArgument("coherent amplitude must be finite");
  }
  if (coherent_truncation_risk(alpha, cutoff)) {
    std::ostringstream msg;
    msg << "coherent state |alpha|^2 = " << std::norm(alpha) << " exceeds n_max/4 = "
        << cutoff.n_max() / 4.0 << "; truncation deficit is significant";
    emit_diagnostic(msg.str());
  }
  std::vector<Complex> amps(static_cast<std::size_t>(cutoff.dim()));
  // alpha^n / sqrt(n!) built incrementally.
  Complex term = std::exp(-std::norm(alpha) / 2.0);
  for (int n = 0; n <= cutoff.n_max(); ++n) {
    amps[static_cast<std::size_t>(n)] = term;
    term *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return {1, cutoff, std::move(amps)};
}

Complex overlap(const MultiModeState& a, const MultiModeState& b) {
  check_same_space(a, b);
  Complex acc{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

MultiModeState renormalize(const MultiModeState& s) {
  const double n = s.norm();
  if (n == 0.0 || !std::isfinite(n)) {
    throw ZeroStateError("cannot renormalize a zero state (post-selected outcome has probability 0)");
  }
  return Complex{1.0 / n} * s;
}

MultiModeState tensor(const MultiModeState& a, const MultiModeState& b) {
  if (a.cutoff() != b.cutoff()) {
    throw CutoffMismatch("tensor product requires equal cutoffs: n_max " + std::to_string(a.n_max()) +
                         " vs " + std::to_string(b.n_max()));
  }
  const int modes = a.mode_count() + b.mode_count();
  if (modes > kMaxModes) {
    throw InvalidArgument("tensor product would have " + std::to_string(modes) + " modes (max " +
                          std::to_string(kMaxModes) + ")");
  }
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  std::vector<Complex> out;
  out.reserve(x.size() * y.size());
  for (Complex ax : x) {
    for (Complex by : y) out.push_back(ax * by);
  }
  return {modes, a.cutoff(), std::move(out)};
}

std::vector<double> partial_trace_probabilities(const MultiModeState& s, int mode) {
  check_mode(s, mode);
  std::vector<double> p(static_cast<std::size_t>(s.cutoff().dim()), 0.0);
  const auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    p[static_cast<std::size_t>(s.occupation(i, mode))] += std::norm(amps[i]);
  }
  const double total = s.norm_squared();
  if (total == 0.0) throw ZeroStateError("photon-count distribution of a zero state");
  for (auto& v : p) v /= total;
  return p;
}

std::vector<double> joint_count_probabilities(const MultiModeState& s, int mode_a, int mode_b) {
  check_mode(s, mode_a);
  check_mode(s, mode_b);
  if (mode_a == mode_b) throw InvalidArgument("joint distribution needs two distinct modes");
  const auto dim = static_cast<std::size_t>(s.cutoff().dim());
  std::vector<double> p(dim * dim, 0.0);
  const auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto na = static_cast<std::size_t>(s.occupation(i, mode_a));
    const auto nb = static_cast<std::size_t>(s.occupation(i, mode_b));
    p[na * dim + nb] += std::norm(amps[i]);
  }
  const double total = s.norm_squared();
  if (total == 0.0) throw ZeroStateError("photon-count distribution of a zero state");
  for (auto& v : p) v /= total;
  return p;
}

void set_diagnostic_sink(DiagnosticSink sink) {
  std::lock_guard lock(g_sink_mutex);
  g_sink = std::move(sink);
}

void emit_diagnostic(std::string_view message) {
  std::lock_guard lock(g_sink_mutex);
  if (g_sink) {
    g_sink(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

}  // namespace jcmsim
