#pragma once

// Scenario runs: trajectory sampling, invariant checks, file emission, oracle
// comparison and the Magnus table.

#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpic/config.hpp"
#include "qpic/output.hpp"
#include "qpic/picture_engine.hpp"

namespace qpic {

struct CheckResult {
  std::string name;
  double value = 0.0;  ///< worst observed deviation
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct OracleSampleDelta {
  double t = 0.0;
  double mean_delta = 0.0;
  double cov_delta = 0.0;
};

struct WignerCheckpoint {
  double t = 0.0;
  double sup_delta = 0.0;
  double integral = 0.0;
  double imag_residue = 0.0;
};

struct OracleReport {
  int cutoff = 0;
  int steps = 0;
  std::vector<OracleSampleDelta> samples;
  std::vector<WignerCheckpoint> wigner;
  double max_mean_delta = 0.0;
  double max_cov_delta = 0.0;
  double max_wigner_delta = 0.0;
  double max_tail = 0.0;
  double moment_tolerance = 0.0;
  double wigner_tolerance = 1e-6;
  std::string error;  ///< set when the oracle could not run (e.g. cutoff violation)
  bool pass = false;
  double seconds = 0.0;
};

struct MagnusRow {
  double t = 0.0;
  std::complex<double> a1_analytic{};
  std::complex<double> a1_numeric{};
  double a1_delta = 0.0;
  double a2_analytic = 0.0;
  double a2_numeric = 0.0;
  double a2_delta = 0.0;
  double a3_norm = 0.0;
};

struct MagnusReport {
  std::vector<MagnusRow> rows;
  double a1_tolerance = 1e-10;
  double a2_tolerance = 1e-10;
  double a3_tolerance = 1e-12;
  bool pass = false;
};

struct RunSummary {
  ScenarioConfig config;
  std::vector<TrajectorySample> trajectory;
  std::vector<CheckResult> checks;
  std::optional<OracleReport> oracle;
  std::vector<std::filesystem::path> files;
  double seconds = 0.0;

  bool pass() const;
};

/// Closed-form trajectory in the configured picture.
std::vector<TrajectorySample> compute_trajectory(const ScenarioConfig& cfg);

/// Invariant checks appropriate to the drive and picture.
std::vector<CheckResult> trajectory_checks(const ScenarioConfig& cfg, const std::vector<TrajectorySample>& traj);

/// Scene for the frame at sample `index`.
FrameScene frame_scene(const ScenarioConfig& cfg, const std::vector<TrajectorySample>& traj, std::size_t index);

/// Sample indices of the `cfg.outputs.frames` frames, evenly spread over the run.
std::vector<std::size_t> frame_indices(const ScenarioConfig& cfg);

/// Runs the scenario and writes every configured output.
RunSummary run_scenario(const ScenarioConfig& cfg);

/// Closed form against the truncated-Fock reference.
OracleReport compare_oracle(const ScenarioConfig& cfg);

/// Analytic against quadrature Magnus terms at Omega t = 2 pi k / 8, k = 1..8.
/// Throws ConfigError for non-linear or resonant drives.
MagnusReport magnus_check(const ScenarioConfig& cfg);

/// Summary document. Wall-clock timings are left out unless requested so that
/// identical configs give byte-identical files.
nlohmann::ordered_json summary_json(const RunSummary& summary, bool with_timings = false);
nlohmann::ordered_json oracle_json(const OracleReport& report, bool with_timings = false);
nlohmann::ordered_json magnus_json(const MagnusReport& report);

/// Configs reproducing the figures. Output paths are relative; pass a base
/// directory to place them.
std::vector<ScenarioConfig> figure_configs(const std::filesystem::path& out_dir = {});

}  // namespace qpic
