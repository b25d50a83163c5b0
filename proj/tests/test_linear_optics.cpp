#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "jcmsim/errors.hpp"
#include "jcmsim/linear_optics.hpp"
#include "oracles.hpp"

using namespace jcmsim;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Random two-mode state with support only on n0 + n1 <= n_max.
MultiModeState random_pair_state(std::mt19937_64& rng, FockCutoff c) {
  MultiModeState shape(2, c);
  auto v = oracle::random_vector(rng, shape.size());
  const auto d = static_cast<std::size_t>(c.dim());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i / d + i % d > static_cast<std::size_t>(c.n_max())) v[i] = 0.0;
  return renormalize(MultiModeState(2, c, v));
}

double max_abs_diff(const MultiModeState& a, const MultiModeState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_SUITE("linear_optics") {
  TEST_CASE("single photon splits evenly") {
    const FockCutoff c{3};
    const auto out = beam_splitter(number_state({1, 0}, c), {});
    CHECK(std::abs(out.amplitude(std::vector<int>{1, 0}) - kInvSqrt2) < 1e-15);
    CHECK(std::abs(out.amplitude(std::vector<int>{0, 1}) - kInvSqrt2) < 1e-15);

    const auto out2 = beam_splitter(number_state({0, 1}, c), {});
    CHECK(std::abs(out2.amplitude(std::vector<int>{1, 0}) - kInvSqrt2) < 1e-15);
    CHECK(std::abs(out2.amplitude(std::vector<int>{0, 1}) + kInvSqrt2) < 1e-15);
  }

  TEST_CASE("two-photon interference") {
    const FockCutoff c{3};
    const auto out = beam_splitter(number_state({1, 1}, c), {});
    CHECK(std::abs(out.amplitude(std::vector<int>{2, 0}) - kInvSqrt2) < 1e-12);
    CHECK(std::abs(out.amplitude(std::vector<int>{0, 2}) + kInvSqrt2) < 1e-12);
    CHECK(std::abs(out.amplitude(std::vector<int>{1, 1})) < 1e-15);
  }

  TEST_CASE("splitter matches the multinomial expansion") {
    for (int n_max = 2; n_max <= 6; ++n_max) {
      const FockCutoff c{n_max};
      for (int n = 0; n <= n_max; ++n) {
        for (int m = 0; n + m <= n_max; ++m) {
          const auto out = beam_splitter(number_state({n, m}, c), {});
          for (int p = 0; p <= n + m; ++p) {
            const Complex got = out.amplitude(std::vector<int>{p, n + m - p});
            CHECK(std::abs(got - oracle::multinomial_splitter(n, m, p)) < 1e-9);
          }
        }
      }
    }
  }

  TEST_CASE("splitter acts on the chosen pair only") {
    const FockCutoff c{2};
    const auto in = number_state({1, 1, 0, 0}, c);
    const auto out = beam_splitter(in, {1, 3});
    CHECK(std::abs(out.amplitude(std::vector<int>{1, 1, 0, 0}) - kInvSqrt2) < 1e-15);
    CHECK(std::abs(out.amplitude(std::vector<int>{1, 0, 0, 1}) - kInvSqrt2) < 1e-15);
    CHECK_THROWS_AS(beam_splitter(in, {0, 4}), ModeIndexOutOfRange);
    CHECK_THROWS_AS(beam_splitter(in, {2, 2}), InvalidArgument);
  }

  TEST_CASE("inverse undoes the splitter and preserves norm") {
    std::mt19937_64 rng(17);
    for (int n_max : {2, 4, 6}) {
      const FockCutoff c{n_max};
      for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_pair_state(rng, c);
        const auto forward = beam_splitter(s, {});
        CHECK(std::abs(forward.norm() - 1.0) < 1e-12);
        CHECK(max_abs_diff(beam_splitter(forward, {}, true), s) < 1e-12);
        CHECK(max_abs_diff(beam_splitter(beam_splitter(s, {}, true), {}), s) < 1e-12);
      }
    }
  }

  TEST_CASE("photon number is conserved") {
    std::mt19937_64 rng(2);
    const FockCutoff c{5};
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = random_pair_state(rng, c);
      const auto out = beam_splitter(s, {});
      std::vector<double> before(11), after(11);
      for (std::size_t i = 0; i < s.size(); ++i) {
        const auto occ = s.occupations_of(i);
        before[static_cast<std::size_t>(occ[0] + occ[1])] += std::norm(s[i]);
        after[static_cast<std::size_t>(occ[0] + occ[1])] += std::norm(out[i]);
      }
      for (std::size_t n = 0; n < before.size(); ++n) CHECK(std::abs(before[n] - after[n]) < 1e-12);
    }
  }

  TEST_CASE("phase shifter") {
    const FockCutoff c{3};
    const auto s = renormalize(number_state({0}, c) + number_state({1}, c) + number_state({2}, c) +
                               number_state({3}, c));
    const auto flipped = phase_shifter(s, {0, M_PI});
    for (int n = 0; n <= 3; ++n) {
      const auto i = static_cast<std::size_t>(n);
      CHECK(flipped[i] == (n % 2 == 0 ? s[i] : -s[i]));
    }
    const auto rotated = phase_shifter(s, {0, 0.3});
    for (int n = 0; n <= 3; ++n) {
      const auto i = static_cast<std::size_t>(n);
      CHECK(std::abs(rotated[i] - std::polar(1.0, 0.3 * n) * s[i]) < 1e-15);
    }
    CHECK(max_abs_diff(phase_shifter(s, {0, 0.0}), s) == 0.0);
    CHECK_THROWS_AS(phase_shifter(s, {1, 0.1}), ModeIndexOutOfRange);
  }

  TEST_CASE("coherent inputs split into coherent outputs") {
    const auto r = coherent_bs_law_check(0.5, 0.0);
    CHECK(std::abs(r.expected_a1 - 0.3535533905932738) < 1e-12);
    CHECK(std::abs(r.expected_a2 - 0.3535533905932738) < 1e-12);
    CHECK(r.deviation_norm < 1e-9);

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int trial = 0; trial < 10; ++trial) {
      const Complex a{u(rng), u(rng)}, b{u(rng), u(rng)};
      const auto rep = coherent_bs_law_check(a, b);
      CHECK(rep.deviation_norm < 1e-9);
      CHECK(rep.truncated_weight < 1e-6);
    }
  }

  TEST_CASE("dual-rail encoding") {
    const FockCutoff c{2};
    CHECK(overlap(encode_dual_rail(0, c), number_state({0, 1}, c)) == Complex{1.0});
    CHECK(overlap(encode_dual_rail(1, c), number_state({1, 0}, c)) == Complex{1.0});
    CHECK_THROWS_AS(encode_dual_rail(2, c), InvalidArgument);

    const std::vector<int> bits{1, 0};
    CHECK(overlap(encode_logical(bits, c), number_state({1, 0, 0, 1}, c)) == Complex{1.0});
  }

  TEST_CASE("decoding") {
    const FockCutoff c{2};
    const auto plus = renormalize(encode_dual_rail(0, c) + encode_dual_rail(1, c));
    const auto q = decode_dual_rail(plus);
    CHECK(std::abs(q.zero - kInvSqrt2) < 1e-15);
    CHECK(std::abs(q.one - kInvSqrt2) < 1e-15);
    CHECK(q.leakage < 1e-15);

    CHECK_THROWS_AS(decode_dual_rail(number_state({1, 1}, c)), DecodeError);
    try {
      decode_dual_rail(number_state({2, 0}, c));
    } catch (const DecodeError& e) {
      CHECK(e.leakage() == doctest::Approx(1.0));
    }
    // A small leak below the tolerance still decodes.
    const auto leaky = encode_dual_rail(1, c) + Complex{1e-6} * vacuum(2, c);
    CHECK(decode_dual_rail(leaky, {}, 1e-9).one == Complex{1.0});

    for (int b0 = 0; b0 < 2; ++b0) {
      for (int b1 = 0; b1 < 2; ++b1) {
        const std::vector<int> bits{b0, b1};
        const auto reg = decode_logical(encode_logical(bits, c));
        REQUIRE(reg.amplitudes.size() == 4);
        CHECK(reg.amplitudes[static_cast<std::size_t>(2 * b0 + b1)] == Complex{1.0});
      }
    }
  }

  TEST_CASE("ideal CSF is a controlled-Z") {
    const FockCutoff c{2};
    for (int b0 = 0; b0 < 2; ++b0) {
      for (int b1 = 0; b1 < 2; ++b1) {
        const std::vector<int> bits{b0, b1};
        const auto r = csf_gate(encode_logical(bits, c), IdealNS{});
        const auto reg = decode_logical(r.output);
        const double sign = (b0 == 1 && b1 == 1) ? -1.0 : 1.0;
        for (std::size_t k = 0; k < 4; ++k) {
          const double expected = k == static_cast<std::size_t>(2 * b0 + b1) ? sign : 0.0;
          CHECK(std::abs(reg.amplitudes[k] - expected) < 1e-12);
        }
        CHECK(r.success_probability == 1.0);
      }
    }

    const std::vector<int> b00{0, 0}, b01{0, 1}, b10{1, 0}, b11{1, 1};
    const auto uniform = Complex{0.5} * (encode_logical(b00, c) + encode_logical(b01, c) +
                                         encode_logical(b10, c) + encode_logical(b11, c));
    const auto reg = decode_logical(csf_gate(uniform, IdealNS{}).output);
    CHECK(std::abs(reg.amplitudes[0] - 0.5) < 1e-12);
    CHECK(std::abs(reg.amplitudes[1] - 0.5) < 1e-12);
    CHECK(std::abs(reg.amplitudes[2] - 0.5) < 1e-12);
    CHECK(std::abs(reg.amplitudes[3] + 0.5) < 1e-12);
  }

  TEST_CASE("CSF rejects malformed inputs") {
    CHECK_THROWS_AS(csf_gate(vacuum(2, FockCutoff{2}), IdealNS{}), DimensionMismatch);
    CHECK_THROWS_AS(csf_gate(Complex{2.0} * vacuum(4, FockCutoff{2}), IdealNS{}), InvalidArgument);
  }

  TEST_CASE("JCM CSF reproduces the phases of a controlled-Z") {
    const FockCutoff c{4};
    const double D = std::abs(cm_dm(3).d);
    const double threshold = 0.99996;
    REQUIRE(oracle::min_csf_fidelity_grid(D) >= threshold);

    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      const auto v = oracle::random_vector(rng, 4);
      MultiModeState in(4, c);
      for (int k = 0; k < 4; ++k) {
        const std::vector<int> bits{k >> 1, k & 1};
        in = in + Complex{v[static_cast<std::size_t>(k)]} * encode_logical(bits, c);
      }
      const auto r = csf_gate(in, JcmNS{3, {}});
      const auto reg = decode_logical(r.output, 1e-9);
      Complex f{};
      for (std::size_t k = 0; k < 4; ++k) f += std::conj(v[k] * (k == 3 ? -1.0 : 1.0)) * reg.amplitudes[k];
      const double fidelity = std::norm(f);
      const double w = std::norm(v[1]) + std::norm(v[2]);
      CHECK(fidelity == doctest::Approx(oracle::csf_fidelity_closed_form(w, D)).epsilon(1e-9));
      CHECK(fidelity >= threshold);
      CHECK(r.success_probability == doctest::Approx(1.0 - w + D * D * w).epsilon(1e-9));
    }
  }
}
