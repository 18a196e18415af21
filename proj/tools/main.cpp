// Command-line front-end: emits the sweep data behind the figures, the
// model-versus-experiment report and the oracle validation suites.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 validation failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvteleport/sweeps.hpp"
#include "cvteleport/validation.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(path);
  if (!os) throw cvt::Error("cannot open output file: " + path);
  os << content;
}

json check_to_json(const cvt::Check& c) {
  return json{{"name", c.name},
              {"expected", c.expected},
              {"actual", c.actual},
              {"tolerance", c.tolerance},
              {"pass", c.pass}};
}

json suite_to_json(const cvt::SuiteReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back(check_to_json(c));
  return json{{"suite", rep.suite}, {"checks", checks}, {"pass", rep.pass}};
}

json rows_to_json(const std::vector<cvt::SweepRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json j{{"curve_id", row.metric}, {"x", row.x}, {"value", row.closed_form}};
    if (row.oracle) {
      j["oracle"] = *row.oracle;
      j["abs_diff"] = *row.abs_diff;
    }
    out.push_back(std::move(j));
  }
  return out;
}

struct CommonFlags {
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_format = true) {
  cmd->add_option("--out", flags.out, "Output path (default: stdout)");
  if (with_format)
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

int run_fidelity_sweep(const cvt::FidelitySweepConfig& cfg,
                       const CommonFlags& flags) {
  const std::vector<cvt::SweepRow> rows = cvt::fidelity_sweep_rows(cfg);
  std::ostringstream os;
  if (flags.format == "csv") {
    cvt::write_sweep_csv(rows, "T_direct", os);
  } else {
    json j{{"command", "fidelity-sweep"},
           {"fock_n", cfg.fock_n},
           {"cat_alpha2", cfg.cat_alpha2},
           {"rows", rows_to_json(rows)}};
    os << j.dump(2) << '\n';
  }
  write_output(flags.out, os.str());
  if (cfg.validate) {
    const double dev = cvt::max_oracle_deviation(rows);
    if (dev > cfg.tol) {
      std::cerr << "oracle cross-check failed: max |closed_form - oracle| = "
                << dev << " > " << cfg.tol << "\n";
      return kExitValidation;
    }
    std::cerr << "oracle cross-check passed: max deviation " << dev << "\n";
  }
  return kExitOk;
}

int run_depth_sweep(const cvt::DepthSweepConfig& cfg, const CommonFlags& flags) {
  const std::vector<cvt::SweepRow> rows = cvt::depth_sweep_rows(cfg);
  std::ostringstream os;
  if (flags.format == "csv") {
    cvt::write_sweep_csv(rows, "x", os);
  } else {
    json j{{"command", "depth-sweep"},
           {"figure", cfg.figure},
           {"tau_in", cfg.tau_in},
           {"crossover_possible", cvt::crossover_possible(cfg.tau_in)},
           {"rows", rows_to_json(rows)}};
    os << j.dump(2) << '\n';
  }
  write_output(flags.out, os.str());
  return kExitOk;
}

int run_crossover(double tau_in, double r, const CommonFlags& flags) {
  const cvt::CrossoverWindow w = cvt::crossover(tau_in, r);
  std::ostringstream os;
  if (flags.format == "csv") {
    os << "tau_in,r,exists,T_lo,T_hi\n";
    os << cvt::format_sig12(tau_in) << ',' << cvt::format_sig12(r) << ','
       << (w ? 1 : 0) << ',' << (w ? cvt::format_sig12(w->first) : "") << ','
       << (w ? cvt::format_sig12(w->second) : "") << '\n';
  } else {
    json j{{"command", "crossover"},
           {"tau_in", tau_in},
           {"r", r},
           {"exists", static_cast<bool>(w)}};
    if (w) {
      j["T_lo"] = w->first;
      j["T_hi"] = w->second;
    }
    os << j.dump(2) << '\n';
  }
  write_output(flags.out, os.str());
  return kExitOk;
}

int run_experiment_check(const cvt::ExperimentConfig& cfg,
                         const CommonFlags& flags) {
  const cvt::ExperimentReport rep = cvt::experiment_check(cfg);
  json j = suite_to_json(rep.suite);
  j["context"] = json{{"f_model", rep.f_model},
                      {"f_experiment", rep.f_experiment},
                      {"f_experiment_err", rep.f_experiment_err},
                      {"input_depth_exact", rep.input_depth_exact},
                      {"input_depth_rounded", rep.input_depth_rounded},
                      {"threshold_T_exact", rep.threshold_exact},
                      {"threshold_T_rounded", rep.threshold_rounded},
                      {"tau_out_at_operating_point",
                       rep.tau_out_at_operating_point}};
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  write_output(flags.out, j.dump(2) + "\n");
  return rep.suite.pass ? kExitOk : kExitValidation;
}

int run_oracle_validate(const std::string& suite,
                        const cvt::ValidationConfig& cfg,
                        const CommonFlags& flags) {
  std::vector<cvt::SuiteReport> reports;
  if (suite.empty())
    reports = cvt::run_all_suites(cfg);
  else
    reports.push_back(cvt::run_suite(suite, cfg));

  bool all_pass = true;
  json out = json::array();
  for (const auto& rep : reports) {
    out.push_back(suite_to_json(rep));
    all_pass = all_pass && rep.pass;
  }
  write_output(flags.out, out.dump(2) + "\n");
  return all_pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lossy continuous-variable teleportation: closed-form channel "
               "results with Fock-basis oracle validation"};
  app.require_subcommand(1);

  // fidelity-sweep
  cvt::FidelitySweepConfig fid_cfg;
  CommonFlags fid_flags;
  int fid_figure = 3;
  CLI::App* fid = app.add_subcommand(
      "fidelity-sweep", "Fidelity versus transmittance curves");
  fid->add_option("--figure", fid_figure, "Figure preset (3)")
      ->check(CLI::IsMember({3}));
  fid->add_option("--r", fid_cfg.r_values, "Teleportation squeezing values");
  fid->add_option("--alpha2", fid_cfg.cat_alpha2, "Cat |alpha|^2");
  fid->add_option("--fock-n", fid_cfg.fock_n, "Fock photon number");
  fid->add_option("--points", fid_cfg.points, "Transmittance grid points");
  fid->add_flag("--validate", fid_cfg.validate,
                "Cross-check sample points against the Fock oracle");
  fid->add_option("--cutoff", fid_cfg.cutoff, "Fock cutoff override");
  fid->add_option("--tol", fid_cfg.tol, "Oracle cross-check tolerance");
  add_common(fid, fid_flags);

  // depth-sweep
  cvt::DepthSweepConfig depth_cfg;
  CommonFlags depth_flags;
  bool tau_given = false;
  CLI::App* dep = app.add_subcommand(
      "depth-sweep", "Nonclassical-depth transfer and crossover curves");
  dep->add_option("--figure", depth_cfg.figure, "Figure preset (2 or 4)")
      ->check(CLI::IsMember({2, 4}));
  dep->add_option("--tau-in", depth_cfg.tau_in, "Input nonclassical depth")
      ->each([&](const std::string&) { tau_given = true; });
  dep->add_option("--r", depth_cfg.r_values, "Squeezing values (figure 4)");
  dep->add_option("--T", depth_cfg.T_values, "Transmittance values (figure 2)");
  dep->add_option("--points", depth_cfg.points, "Sweep grid points");
  add_common(dep, depth_flags);

  // crossover
  double xo_tau = 1.0, xo_r = 1.0;
  CommonFlags xo_flags;
  CLI::App* xo = app.add_subcommand(
      "crossover", "Transmittance window where teleportation beats direct "
                   "transmission");
  xo->add_option("--tau-in", xo_tau, "Input nonclassical depth")->required();
  xo->add_option("--r", xo_r, "Squeezing parameter")->required();
  add_common(xo, xo_flags);

  // experiment-check
  cvt::ExperimentConfig exp_cfg;
  CommonFlags exp_flags;
  CLI::App* exp = app.add_subcommand(
      "experiment-check", "Model values against the published experiment");
  CLI::Option* opt_r = exp->add_option("--r", exp_cfg.r, "Squeezing override");
  CLI::Option* opt_t = exp->add_option("--T", exp_cfg.T, "Transmittance override");
  CLI::Option* opt_x = exp->add_option("--xi", exp_cfg.xi, "Input squeezing override");
  add_common(exp, exp_flags, false);

  // oracle-validate
  std::string suite;
  cvt::ValidationConfig val_cfg;
  CommonFlags val_flags;
  CLI::App* val = app.add_subcommand(
      "oracle-validate", "Closed forms against the Fock-basis oracles");
  val->add_option("--suite", suite, "Run a single suite")
      ->check(CLI::IsMember(cvt::suite_names()));
  val->add_option("--cutoff", val_cfg.cutoff_override, "Fock cutoff override");
  val->add_option("--tol", val_cfg.tol_override, "Tolerance override");
  add_common(val, val_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (fid->parsed()) return run_fidelity_sweep(fid_cfg, fid_flags);
    if (dep->parsed()) {
      if (!tau_given) depth_cfg.tau_in = (depth_cfg.figure == 2) ? 0.5 : 1.0;
      return run_depth_sweep(depth_cfg, depth_flags);
    }
    if (xo->parsed()) return run_crossover(xo_tau, xo_r, xo_flags);
    if (exp->parsed()) {
      exp_cfg.defaults = !(*opt_r) && !(*opt_t) && !(*opt_x);
      return run_experiment_check(exp_cfg, exp_flags);
    }
    if (val->parsed()) return run_oracle_validate(suite, val_cfg, val_flags);
  } catch (const cvt::QuadratureNotConverged& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const cvt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
