#pragma once

// Scenario configuration: a flat `section.key = value` document.
// The grammar is described in docs/config-format.md.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpic/drive.hpp"
#include "qpic/gaussian_state.hpp"
#include "qpic/picture_engine.hpp"

namespace qpic {

/// Malformed document or out-of-domain value. `line` is 0 when the problem is
/// not tied to a single line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string key, const std::string& message);
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

struct InitialConfig {
  double mu_x = 0.0;
  double s = 0.0;  ///< squeezing strength; sigma_x^2 = e^{-2s}/2

  GaussianState state() const { return ideal_squeezed(mu_x, s); }
  friend bool operator==(const InitialConfig&, const InitialConfig&) = default;
};

struct TimeConfig {
  double t_max = 0.0;
  int samples = 0;
  friend bool operator==(const TimeConfig&, const TimeConfig&) = default;
};

struct OutputConfig {
  std::filesystem::path csv;
  std::filesystem::path svg_dir;
  std::filesystem::path summary;
  int frames = 9;
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct OracleConfig {
  bool enabled = false;
  int cutoff = 60;
  int steps = 0;  ///< 0: fock::default_steps
  friend bool operator==(const OracleConfig&, const OracleConfig&) = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  InitialConfig initial;
  DriveSpec drive;
  PictureTag picture = PictureTag::sp;
  TimeConfig time;
  OutputConfig outputs;
  OracleConfig oracle;

  /// Sample times, uniform on [0, t_max].
  std::vector<double> times() const { return uniform_times(time.t_max, time.samples); }
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Slowest nonzero angular frequency of the drive (w0, |w1|, |Omega|).
double slowest_frequency(const DriveSpec& d);

/// Parse and resolve defaults. Relative output paths are resolved against
/// `base_dir` when it is non-empty.
ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads `path` and resolves relative outputs against its directory.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Canonical document; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

/// Numeric value: decimal literal, `pi`, or `x*y`, `x/y` with such factors.
std::optional<double> parse_number(std::string_view text);

}  // namespace qpic
