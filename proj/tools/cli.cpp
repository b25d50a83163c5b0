#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "jcmsim/errors.hpp"
#include "jcmsim/fock.hpp"
#include "jcmsim/interferometer.hpp"
#include "jcmsim/jcm.hpp"
#include "jcmsim/linear_optics.hpp"
#include "jcmsim/loop_circuit.hpp"
#include "jcmsim/serialization.hpp"

namespace jcmsim::cli {

namespace {

using nlohmann::json;

// Bad user input discovered after CLI11 parsing; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return v;
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json run_record(const std::string& subcommand, json config, json results) {
  return json{{"schema", kSchemaVersion}, {"tool", "jcmsim"},           {"version", kVersion},
              {"subcommand", subcommand}, {"config", std::move(config)}, {"results", std::move(results)},
              {"timestamp", timestamp_utc()}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path, const std::string& flag) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(flag + ": '" + path + "' is not valid JSON (" + e.what() + ")");
  }
}

// Writes to `path`, or to `out` when the path is empty.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("--out: cannot write '" + path + "'");
  f << text;
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
  s += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
    s += '\n';
  }
  return s;
}

struct Common {
  std::string out_path;
  std::string format = "json";
  int n_max = kDefaultNMax;
};

void add_out(CLI::App* sub, Common& c) { sub->add_option("--out", c.out_path, "Output file (default: stdout)"); }

void add_format(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

void add_n_max(CLI::App* sub, Common& c) {
  sub->add_option("--n-max", c.n_max, "Photon-number cutoff per mode")
      ->check(CLI::Range(2, 40))
      ->capture_default_str();
}

Compensation parse_compensation(const std::string& s) {
  if (s == "auto") return Compensation::automatic;
  if (s == "on") return Compensation::always;
  return Compensation::never;
}

std::string fig3_csv(int steps) {
  std::vector<std::vector<double>> rows;
  for (int k = 0; k <= steps; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / steps;
    const auto F = f_functions(theta);
    rows.push_back({theta, std::abs(F[0]), std::abs(F[1])});
  }
  return csv({"theta", "abs_F1", "abs_F2"}, rows);
}

json csf_truth_table(const NSMode& mode, FockCutoff cutoff, double tolerance) {
  json rows = json::array();
  double cz_deviation = 0.0;
  double min_fidelity = 1.0;
  for (int code = 0; code < 4; ++code) {
    const int bits[] = {code >> 1, code & 1};
    const auto result = csf_gate(encode_logical(bits, cutoff), mode);
    const auto decoded = decode_logical(result.output, tolerance);
    const double sign = code == 3 ? -1.0 : 1.0;
    const Complex diag = decoded.amplitudes[static_cast<std::size_t>(code)];
    const double fidelity = std::norm(sign * diag);
    for (int k = 0; k < 4; ++k) {
      const Complex ideal = k == code ? sign : 0.0;
      cz_deviation = std::max(cz_deviation, std::abs(decoded.amplitudes[static_cast<std::size_t>(k)] - ideal));
    }
    min_fidelity = std::min(min_fidelity, fidelity);
    json amps = json::array();
    for (Complex a : decoded.amplitudes) amps.push_back(complex_to_json(a));
    rows.push_back({{"input", std::to_string(bits[0]) + std::to_string(bits[1])},
                    {"output_logical", std::move(amps)},
                    {"phase", std::arg(diag)},
                    {"fidelity", fidelity},
                    {"success_probability", result.success_probability},
                    {"leakage", decoded.leakage}});
  }
  return json{{"truth_table", std::move(rows)}, {"max_cz_deviation", cz_deviation}, {"min_fidelity", min_fidelity}};
}

}  // namespace

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 6);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

std::complex<double> parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '(' && ch != ')') s += ch;
  }
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (const auto comma = s.find(','); comma != std::string::npos) {
    return {parse_double(std::string_view(s).substr(0, comma)), parse_double(std::string_view(s).substr(comma + 1))};
  }
  if (s.back() != 'i' && s.back() != 'j') return {parse_double(s), 0.0};

  s.pop_back();
  // Split at the last sign that is not an exponent sign or the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  if (im.front() == '+') im.erase(0, 1);
  return {re.empty() ? 0.0 : parse_double(re), parse_double(im)};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jaynes-Cummings NS gate and linear-optics simulator", "jcmsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  std::function<void()> action;

  // table1
  auto* t1 = app.add_subcommand("table1", "|c(m)|^2 and d(m) for m = 0..4");
  common.format = "csv";
  add_format(t1, common);
  add_out(t1, common);
  t1->callback([&] {
    action = [&] {
      const auto rows = table1();
      if (common.format == "csv") {
        std::vector<std::vector<double>> data;
        for (const auto& r : rows) data.push_back({static_cast<double>(r.m), r.c_squared, r.d});
        emit(out, common.out_path, csv({"m", "c2", "d"}, data));
      } else {
        emit(out, common.out_path, run_record("table1", json::object(), json{{"rows", rows}}).dump(2) + "\n");
      }
    };
  });

  // ns-gate
  int ns_m = 0;
  std::string ns_input;
  bool ns_phase = false;
  double kappa = kReferenceKappa;
  double kappa_phase = 0.0;
  auto* ns = app.add_subcommand("ns-gate", "JCM NS gate on a single-mode state read from JSON");
  ns->add_option("--m", ns_m, "Interaction-time index m >= 0")->required()->check(CLI::NonNegativeNumber);
  ns->add_option("--input", ns_input, "State JSON {mode_count, n_max, amplitudes}")->required();
  ns->add_flag("--phase", ns_phase, "Apply the (-1)^n compensating phase shifter");
  ns->add_option("--kappa", kappa, "Coupling |kappa| in s^-1")->check(CLI::PositiveNumber)->capture_default_str();
  ns->add_option("--kappa-phase", kappa_phase, "Phase of kappa in radians");
  add_out(ns, common);
  ns->callback([&] {
    action = [&] {
      const auto input = state_from_json(read_json_file(ns_input, "--input"));
      const auto result = ns_gate(input, ns_m, ns_phase, {kappa, kappa_phase});
      json config{{"m", ns_m},         {"input", ns_input},           {"phase", ns_phase},
                  {"kappa", kappa},    {"kappa_phase", kappa_phase},  {"input_state", input}};
      emit(out, common.out_path, run_record("ns-gate", std::move(config), result).dump(2) + "\n");
    };
  });

  // csf-verify
  int csf_m = -1;
  double csf_tol = 1e-9;
  auto* csf = app.add_subcommand("csf-verify", "Truth table of the conditional sign-flip network");
  csf->add_option("--jcm-m", csf_m, "Use the JCM NS gate with this m (default: ideal NS)")
      ->check(CLI::NonNegativeNumber);
  csf->add_option("--leakage-tol", csf_tol, "Allowed leakage out of the logical subspace")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  csf->add_option("--kappa", kappa, "Coupling |kappa| in s^-1")->check(CLI::PositiveNumber);
  add_out(csf, common);
  add_n_max(csf, common);
  csf->callback([&] {
    action = [&] {
      const NSMode mode = csf_m < 0 ? NSMode{IdealNS{}} : NSMode{JcmNS{csf_m, {kappa, 0.0}}};
      json config{{"ns", csf_m < 0 ? "ideal" : "jcm"}, {"n_max", common.n_max}, {"leakage_tol", csf_tol}};
      if (csf_m >= 0) config["jcm_m"] = csf_m;
      emit(out, common.out_path,
           run_record("csf-verify", std::move(config), csf_truth_table(mode, FockCutoff{common.n_max}, csf_tol))
                   .dump(2) +
               "\n");
    };
  });

  // mach-zehnder
  std::string mz_alpha = "0.5";
  double mz_theta = std::numbers::pi / 2.0;
  int mz_m = 3;
  std::uint64_t mz_shots = 100000;
  std::uint64_t mz_seed = 0;
  std::string mz_comp = "auto";
  std::string mz_sweep;
  int mz_steps = 256;
  auto* mz = app.add_subcommand("mach-zehnder", "Cavity output through the Mach-Zehnder interferometer");
  mz->add_option("--alpha", mz_alpha, "Coherent amplitude, e.g. 0.5 or 0.5+0.1i")->capture_default_str();
  mz->add_option("--theta", mz_theta, "Phase shifter angle in radians")->capture_default_str();
  mz->add_option("--m", mz_m, "Interaction-time index m")->check(CLI::NonNegativeNumber)->capture_default_str();
  mz->add_option("--shots", mz_shots, "Monte Carlo shots (>= 1)")->check(CLI::PositiveNumber)->capture_default_str();
  mz->add_option("--seed", mz_seed, "RNG seed (required)")->required();
  mz->add_option("--compensation", mz_comp, "(-1)^n shifter behind the cavity")
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->capture_default_str();
  mz->add_option("--sweep-csv", mz_sweep, "Also write a (theta, |F1|, |F2|) sweep to this CSV file");
  mz->add_option("--steps", mz_steps, "Sweep resolution")->check(CLI::Range(1, 1000000))->capture_default_str();
  add_out(mz, common);
  add_n_max(mz, common);
  mz->callback([&] {
    action = [&] {
      Complex alpha;
      try {
        alpha = parse_complex(mz_alpha);
      } catch (const std::invalid_argument& e) {
        throw UsageError("--alpha: expected a complex number such as 0.5 or 0.5+0.1i (" + std::string(e.what()) + ")");
      }
      ConditionalRunConfig cfg;
      cfg.experiment.alpha = alpha;
      cfg.experiment.m = mz_m;
      cfg.experiment.theta = mz_theta;
      cfg.experiment.cutoff = FockCutoff{common.n_max};
      cfg.experiment.compensation = parse_compensation(mz_comp);
      cfg.shots = mz_shots;
      cfg.seed = mz_seed;
      const auto report = conditional_run(cfg);
      json config{{"alpha", complex_to_json(alpha)},
                  {"theta", mz_theta},
                  {"m", mz_m},
                  {"shots", mz_shots},
                  {"seed", mz_seed},
                  {"n_max", common.n_max},
                  {"compensation", mz_comp}};
      json results{{"response", interferometer_response(alpha, mz_theta)},
                   {"compensating_phase", resolve_compensation(cfg.experiment.compensation, mz_m)},
                   {"monte_carlo", report},
                   {"seed", mz_seed},
                   {"n_max", common.n_max}};
      if (!mz_sweep.empty()) {
        emit(out, mz_sweep, fig3_csv(mz_steps));
        config["sweep_csv"] = mz_sweep;
        config["steps"] = mz_steps;
      }
      emit(out, common.out_path, run_record("mach-zehnder", std::move(config), std::move(results)).dump(2) + "\n");
    };
  });

  // fig3-sweep
  int f3_steps = 256;
  auto* f3 = app.add_subcommand("fig3-sweep", "|F1(theta)| and |F2(theta)| over [0, 2pi]");
  f3->add_option("--steps", f3_steps, "Number of intervals")->check(CLI::Range(1, 1000000))->capture_default_str();
  add_out(f3, common);
  f3->callback([&] { action = [&] { emit(out, common.out_path, fig3_csv(f3_steps)); }; });

  // fig4-pmf
  std::vector<double> f4_mu{0.4665, 0.03349};
  int f4_n = 2;
  auto* f4 = app.add_subcommand("fig4-pmf", "Poisson P(n, mu) for the branch means");
  f4->add_option("--mu", f4_mu, "Means")->check(CLI::NonNegativeNumber)->capture_default_str();
  f4->add_option("--max-n", f4_n, "Largest n")->check(CLI::Range(0, 1000))->capture_default_str();
  add_out(f4, common);
  f4->callback([&] {
    action = [&] {
      std::vector<std::string> header{"n"};
      for (double mu : f4_mu) header.push_back("P(n;" + format_number(mu) + ")");
      std::vector<std::vector<double>> rows;
      for (int n = 0; n <= f4_n; ++n) {
        std::vector<double> row{static_cast<double>(n)};
        for (double mu : f4_mu) row.push_back(poisson_pmf(n, mu));
        rows.push_back(std::move(row));
      }
      emit(out, common.out_path, csv(header, rows));
    };
  });

  // loop-timing
  LoopTimingConfig timing;
  auto* lt = app.add_subcommand("loop-timing", "Pockels-cell timing and loss budget of the cavity loop");
  lt->add_option("--wavelength", timing.wavelength, "Wavelength in m")->check(CLI::PositiveNumber)->capture_default_str();
  lt->add_option("--kappa", timing.kappa_abs, "Coupling |kappa| in s^-1")->check(CLI::PositiveNumber)->capture_default_str();
  lt->add_option("--loss-pc", timing.loss_pc, "PC insertion loss per traversal")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();
  lt->add_option("--loss-pbs", timing.loss_pbs, "PBS insertion loss per traversal")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();
  lt->add_option("--pc-response", timing.pc_response_available, "Achievable PC response time in s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lt->add_option("--pc-passes", timing.pc_passes_per_round_trip, "PC traversals per round trip")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  lt->add_option("--pbs-passes", timing.pbs_passes_per_round_trip, "PBS traversals per round trip")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_out(lt, common);
  lt->callback([&] {
    action = [&] {
      const auto report = timing_report(timing);
      json config{{"wavelength", timing.wavelength},
                  {"kappa", timing.kappa_abs},
                  {"loss_pc", timing.loss_pc},
                  {"loss_pbs", timing.loss_pbs},
                  {"pc_response", timing.pc_response_available},
                  {"pc_passes", timing.pc_passes_per_round_trip},
                  {"pbs_passes", timing.pbs_passes_per_round_trip}};
      emit(out, common.out_path, run_record("loop-timing", std::move(config), report).dump(2) + "\n");
    };
  });

  // loop-protocol
  std::string lp_schedule;
  double lp_wavelength = kReferenceWavelength;
  int exit_code = 0;
  auto* lp = app.add_subcommand("loop-protocol", "Trace a photon through the PBS/PC loop schedule");
  lp->add_option("--schedule", lp_schedule, "Schedule JSON {kappa, m, phases[3], input?}")->required();
  lp->add_option("--wavelength", lp_wavelength, "Wavelength in m")->check(CLI::PositiveNumber)->capture_default_str();
  add_out(lp, common);
  lp->callback([&] {
    action = [&] {
      const auto doc = read_json_file(lp_schedule, "--schedule");
      LoopSchedule schedule = [&] {
        try {
          return schedule_from_json(doc);
        } catch (const json::exception& e) {
          throw UsageError("--schedule: " + std::string(e.what()));
        }
      }();
      Complex c_v{0.0}, c_h{1.0};
      if (doc.contains("input")) {
        const auto& in = doc.at("input");
        if (!in.is_array() || in.size() != 2) throw UsageError("--schedule: \"input\" must be [c_V, c_H]");
        c_v = complex_from_json(in[0]);
        c_h = complex_from_json(in[1]);
      }
      json config{{"schedule", doc}, {"wavelength", lp_wavelength}};
      json results;
      try {
        results = json{{"ok", true}, {"trace", run_loop_protocol(schedule, c_v, c_h, lp_wavelength)}};
      } catch (const ProtocolViolation& v) {
        results = json{{"ok", false}, {"violation", v.what()}};
        exit_code = 1;
      }
      emit(out, common.out_path, run_record("loop-protocol", std::move(config), std::move(results)).dump(2) + "\n");
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    err << "run 'jcmsim --help' for the list of subcommands and flags\n";
    return 2;
  }

  try {
    if (action) action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const DimensionMismatch& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const OccupationExceedsCutoff& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}

}  // namespace jcmsim::cli
