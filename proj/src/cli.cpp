#include "qpic/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qpic/config.hpp"
#include "qpic/fock_oracle.hpp"
#include "qpic/scenario.hpp"

namespace qpic::cli {

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

void print_checks(const RunSummary& s, std::ostream& out) {
  for (const auto& c : s.checks) {
    out << "  " << verdict(c.pass) << "  " << c.name << " = " << num(c.value) << " (tol " << num(c.tolerance) << ")  "
        << c.detail << "\n";
  }
}

int simulate(const std::string& path, bool timings, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg = load_config(path);
  const RunSummary s = run_scenario(cfg);
  if (timings && !cfg.outputs.summary.empty()) {
    write_text_file(cfg.outputs.summary, summary_json(s, true).dump(2) + "\n");
  }
  out << cfg.name << " [" << to_string(cfg.drive.drive_kind()) << ", " << to_string(cfg.picture) << ", "
      << cfg.time.samples << " samples]\n";
  print_checks(s, out);
  for (const auto& f : s.files) out << "  wrote " << f.string() << "\n";
  if (timings) err << cfg.name << ": " << s.seconds << " s\n";
  out << verdict(s.pass()) << "\n";
  return s.pass() ? kPass : kFail;
}

int figures(const std::string& dir, bool timings, std::ostream& out, std::ostream& err) {
  const std::filesystem::path root(dir);
  const std::vector<ScenarioConfig> portable = figure_configs();
  const std::vector<ScenarioConfig> placed = figure_configs(root);
  bool all = true;
  for (std::size_t k = 0; k < placed.size(); ++k) {
    write_text_file(root / (portable[k].name + ".cfg"), serialize_config(portable[k]));
    const RunSummary s = run_scenario(placed[k]);
    out << verdict(s.pass()) << "  " << placed[k].name << "  (" << s.files.size() + 1 << " files)\n";
    if (!s.pass()) print_checks(s, out);
    if (timings) err << placed[k].name << ": " << s.seconds << " s\n";
    all = all && s.pass();
  }
  return all ? kPass : kFail;
}

int oracle(const std::string& path, const std::string& json_path, bool timings, std::ostream& out, std::ostream& err) {
  const ScenarioConfig cfg = load_config(path);
  if (!cfg.oracle.enabled) throw ConfigError(0, "oracle.enabled", "compare-oracle needs oracle.enabled = true");
  const OracleReport r = compare_oracle(cfg);
  out << cfg.name << ": cutoff " << r.cutoff << ", " << r.steps << " midpoint steps (Richardson-extrapolated)\n";
  if (!r.error.empty()) out << "  error: " << r.error << "\n";
  out << "  max |mean delta|     " << num(r.max_mean_delta) << " (tol " << num(r.moment_tolerance) << ")\n";
  out << "  max |cov delta|      " << num(r.max_cov_delta) << " (tol " << num(r.moment_tolerance) << ")\n";
  for (const auto& w : r.wigner) {
    out << "  wigner t=" << num(w.t) << "  sup delta " << num(w.sup_delta) << "  integral " << num(w.integral) << "\n";
  }
  out << "  max tail population  " << num(r.max_tail) << " (tol 1.000e-08)\n";
  if (timings) err << cfg.name << ": " << r.seconds << " s\n";
  if (!json_path.empty()) write_text_file(json_path, oracle_json(r, timings).dump(2) + "\n");
  out << verdict(r.pass) << "\n";
  return r.pass ? kPass : kFail;
}

int magnus(const std::string& path, const std::string& json_path, std::ostream& out) {
  const ScenarioConfig cfg = load_config(path);
  const MagnusReport r = magnus_check(cfg);
  out << "  t            |A1 delta|   A2 analytic          A2 numeric           |A2 delta|   A3 norm\n";
  for (const auto& row : r.rows) {
    char line[200];
    std::snprintf(line, sizeof line, "  %-12.6f %-12.3e %-20.14f %-20.14f %-12.3e %.3e\n", row.t, row.a1_delta,
                  row.a2_analytic, row.a2_numeric, row.a2_delta, row.a3_norm);
    out << line;
  }
  if (!json_path.empty()) write_text_file(json_path, magnus_json(r).dump(2) + "\n");
  out << verdict(r.pass) << "\n";
  return r.pass ? kPass : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-space simulation of the driven harmonic oscillator", "qpic"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string json_path;
  bool timings = false;

  auto* sim = app.add_subcommand("simulate", "Run a scenario and write its CSV, SVG and JSON outputs");
  sim->add_option("--config", config_path, "Scenario file")->required();
  sim->add_flag("--timings", timings, "Report wall-clock timings (stderr and summary)");

  auto* fig = app.add_subcommand("figures", "Write and run the figure-reproduction scenarios");
  fig->add_option("--out", out_dir, "Output directory")->required();
  fig->add_flag("--timings", timings, "Report wall-clock timings on stderr");

  auto* orc = app.add_subcommand("compare-oracle", "Check the closed form against the truncated Fock reference");
  orc->add_option("--config", config_path, "Scenario file")->required();
  orc->add_option("--json", json_path, "Also write the report as JSON");
  orc->add_flag("--timings", timings, "Report wall-clock timings");

  auto* mag = app.add_subcommand("magnus-check", "Compare analytic and quadrature Magnus terms");
  mag->add_option("--config", config_path, "Scenario file")->required();
  mag->add_option("--json", json_path, "Also write the table as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*sim) return simulate(config_path, timings, out, err);
    if (*fig) return figures(out_dir, timings, out, err);
    if (*orc) return oracle(config_path, json_path, timings, out, err);
    if (*mag) return magnus(config_path, json_path, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, std::cout, std::cerr);
}

}  // namespace qpic::cli
