// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "jcmsim/fock.hpp"
#include "jcmsim/interferometer.hpp"
#include "jcmsim/jcm.hpp"
#include "jcmsim/linear_optics.hpp"
#include "jcmsim/loop_circuit.hpp"
#include "oracles.hpp"

using namespace jcmsim;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Verdict table_coefficients() {
  const double c2[] = {0.633, 0.138, 0.988, 0.0247, 0.828};
  const double d[] = {-0.606, 0.928, 0.111, -0.988, 0.414};
  double worst = 0.0;
  for (const auto& row : table1()) {
    worst = std::max(worst, std::abs(row.c_squared - c2[row.m]));
    worst = std::max(worst, std::abs(row.d - d[row.m]));
  }
  return {worst <= 5e-4, fmt("max |deviation| = %.3g (tol 5e-4)", worst)};
}

Verdict two_photon_sign_flip() {
  const FockCutoff c{};
  const double t = 3.0 * M_PI / (std::sqrt(2.0) * kReferenceKappa);
  const auto in = AtomFieldState::product(AtomState::ground(), number_state({2}, c));
  const auto out = jcm_propagate(in, {kReferenceKappa, 0.0, t});
  double err = 0.0;
  for (std::size_t i = 0; i < out.amplitudes().size(); ++i)
    err = std::max(err, std::abs(out.amplitudes()[i] + in.amplitudes()[i]));
  return {err < 1e-10, fmt("max |U|g,2> + |g,2>| = %.3g (tol 1e-10)", err)};
}

Verdict f_function_values() {
  const auto F = f_functions(M_PI / 2.0);
  const double e1 = std::abs(std::abs(F[0]) - 2.732);
  const double e2 = std::abs(std::abs(F[1]) - 0.7321);
  double sym = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto G = f_functions(2.0 * M_PI * k / 1000.0);
    sym = std::max({sym, std::abs(std::abs(G[0]) - std::abs(G[3])), std::abs(std::abs(G[1]) - std::abs(G[2]))});
  }
  return {e1 <= 5e-4 && e2 <= 5e-4 && sym <= 1e-12,
          fmt("|F1(pi/2)| = %.6f, |F2(pi/2)| = %.6f, symmetry error %.3g", std::abs(F[0]), std::abs(F[1]), sym)};
}

Verdict poisson_values() {
  struct Case {
    int n;
    double mu, want;
  };
  const Case cases[] = {{1, 0.4665, 0.2926}, {2, 0.4665, 0.06825}, {1, 0.03349, 0.03239}, {2, 0.03349, 0.0005424}};
  double worst = 0.0;
  for (const auto& c : cases) worst = std::max(worst, std::abs(poisson_pmf(c.n, c.mu) - c.want));
  return {worst <= 5e-5, fmt("max |deviation| = %.3g (tol 5e-5)", worst)};
}

Verdict branch_means_and_marginals() {
  const double alpha = 0.5;
  const auto r = interferometer_response(alpha, M_PI / 2.0);
  const bool means = std::abs(r.mu1 - 0.4665) <= 5e-5 && std::abs(r.mu2 - 0.03349) <= 5e-5;

  const auto simulated = detector_statistics(experiment_state({}));
  const auto branch = detector_statistics(renormalize(branch_model_state(alpha, M_PI / 2.0)));
  double worst = 0.0;
  for (std::size_t n = 0; n < simulated.d1.size(); ++n) {
    worst = std::max(worst, std::abs(simulated.d1[n] - branch.d1[n]));
    worst = std::max(worst, std::abs(simulated.d2[n] - branch.d2[n]));
  }
  const double budget = alpha * alpha;
  return {means && worst <= budget,
          fmt("mu1 = %.6f, mu2 = %.6f, max marginal gap %.4f", r.mu1, r.mu2, worst) +
              fmt(" (budget %.2f)", budget)};
}

Verdict csf_gate_checks() {
  const FockCutoff c{4};
  double ideal_dev = 0.0;
  double min_fidelity = 1.0;
  for (int code = 0; code < 4; ++code) {
    const std::vector<int> bits{code >> 1, code & 1};
    const double sign = code == 3 ? -1.0 : 1.0;
    const auto ideal = decode_logical(csf_gate(encode_logical(bits, c), IdealNS{}).output);
    for (int k = 0; k < 4; ++k) {
      const double want = k == code ? sign : 0.0;
      ideal_dev = std::max(ideal_dev, std::abs(ideal.amplitudes[static_cast<std::size_t>(k)] - want));
    }
    const auto jcm = decode_logical(csf_gate(encode_logical(bits, c), JcmNS{3, {}}).output);
    min_fidelity = std::min(min_fidelity, std::norm(sign * jcm.amplitudes[static_cast<std::size_t>(code)]));
  }
  const double threshold = 0.99996;
  const double oracle_min = oracle::min_csf_fidelity_grid(std::abs(cm_dm(3).d));
  return {ideal_dev <= 1e-12 && min_fidelity >= threshold && oracle_min >= threshold,
          fmt("ideal deviation %.3g, JCM m=3 min basis fidelity %.12f, oracle bound %.8f", ideal_dev, min_fidelity,
              oracle_min)};
}

Verdict timing_values() {
  const auto r = timing_report({});
  const auto rel = [](double got, double want) { return std::abs(got - want) / want; };
  const double worst = std::max({rel(r.pc_response_required, 2.330e-11), rel(r.m1.gate_time, 4.67e-4),
                                 rel(r.m3.gate_time, 1.09e-3)});
  return {worst <= 5e-3, fmt("L/c = %.4e s, T(1) = %.4e s, T(3) = %.4e s", r.pc_response_required, r.m1.gate_time,
                             r.m3.gate_time) +
                             fmt(", max rel. error %.3g", worst)};
}

Verdict infidelity_scaling() {
  const std::vector<double> alphas{0.4, 0.2, 0.1};
  std::vector<double> inf;
  for (double a : alphas) {
    const auto out = cavity_ns_output(a, 3, FockCutoff{}, resolve_compensation(Compensation::automatic, 3));
    inf.push_back(1.0 - 0.25 * std::norm(overlap(Complex{2.0} * cat_reference(a, false), out.state)));
  }
  const double slope = oracle::loglog_slope(alphas, inf);
  return {std::abs(slope - 2.0) <= 0.3,
          fmt("infidelities %.4g, %.4g, %.4g", inf[0], inf[1], inf[2]) + fmt(", slope %.3f", slope)};
}

Verdict oracle_agreement() {
  double jcm_err = 0.0;
  double bs_err = 0.0;
  const double kappa = kReferenceKappa;
  for (int n_max = 2; n_max <= 6; ++n_max) {
    const FockCutoff c{n_max};
    const int dim = 2 * c.dim();
    for (int m = 0; m <= 4; ++m) {
      const double t = ns_gate_time(kappa, m) * 0.77;
      const double phase = 0.3 * m;
      const auto u = oracle::dense_jcm_propagator(n_max, kappa, phase, t);
      for (int col = 0; col < dim; ++col) {
        std::vector<Complex> amps(static_cast<std::size_t>(dim));
        amps[static_cast<std::size_t>(col)] = 1.0;
        const auto out = jcm_propagate(AtomFieldState(c, amps), {kappa, phase, t});
        for (int row = 0; row < dim; ++row)
          jcm_err = std::max(jcm_err, std::abs(out.amplitudes()[static_cast<std::size_t>(row)] - u(row, col)));
      }
    }
    for (int n = 0; n <= n_max; ++n) {
      for (int k = 0; n + k <= n_max; ++k) {
        const auto out = beam_splitter(number_state({n, k}, c), {});
        for (std::size_t i = 0; i < out.size(); ++i) {
          const auto occ = out.occupations_of(i);
          const double want = occ[0] + occ[1] == n + k ? oracle::multinomial_splitter(n, k, occ[0]) : 0.0;
          bs_err = std::max(bs_err, std::abs(out[i] - want));
        }
      }
    }
  }
  return {jcm_err <= 1e-9 && bs_err <= 1e-9, fmt("JCM vs dense exp max error %.3g, BS vs multinomial %.3g", jcm_err,
                                                 bs_err)};
}

Verdict monte_carlo() {
  ConditionalRunConfig cfg;
  cfg.shots = 100000;
  cfg.seed = 20240607;
  const auto rep = conditional_run(cfg);
  const double shots = static_cast<double>(cfg.shots);

  std::vector<double> obs, expd;
  double po = 0.0, pe = 0.0;
  for (std::size_t n = 0; n < rep.d2_histogram.size(); ++n) {
    po += static_cast<double>(rep.d2_histogram[n]);
    pe += rep.exact.d2[n] * shots;
    if (pe >= 5.0) {
      obs.push_back(po);
      expd.push_back(pe);
      po = pe = 0.0;
    }
  }
  obs.back() += po;
  expd.back() += pe;
  double chi2 = 0.0;
  for (std::size_t k = 0; k < obs.size(); ++k) chi2 += std::pow(obs[k] - expd[k], 2) / expd[k];
  const double critical = boost::math::quantile(boost::math::chi_squared(static_cast<double>(obs.size() - 1)), 0.99);

  const double p = rep.d2_single_exact;
  const double sigma = std::sqrt(p * (1.0 - p) / shots);
  const double z = std::abs(rep.d2_single_frequency - p) / sigma;
  return {chi2 < critical && z <= 3.0,
          fmt("chi2 = %.3f < %.3f", chi2, critical) +
              fmt("; P(D2=1) freq %.5f vs exact %.5f", rep.d2_single_frequency, p) + fmt(" (%.2f sigma)", z) +
              fmt("; one-branch estimate %.5f", rep.d2_single_leading)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria{
      {"sign-shift coefficients c(m)^2 and d(m), m = 0..4", table_coefficients},
      {"|g>|2> acquires a minus sign at t = 3pi/(sqrt2 |kappa|)", two_photon_sign_flip},
      {"interferometer F functions and their symmetry", f_function_values},
      {"Poisson probabilities at the branch means", poisson_values},
      {"branch means and simulated detector marginals", branch_means_and_marginals},
      {"conditional sign-flip truth table", csf_gate_checks},
      {"loop timing figures", timing_values},
      {"infidelity to the two-coherent-state reference scales as alpha^2", infidelity_scaling},
      {"block propagator and beam splitter against independent oracles", oracle_agreement},
      {"Monte Carlo photon counting at D2", monte_carlo},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v{false, ""};
    try {
      v = criteria[i].check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s [%zu] %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, v.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
