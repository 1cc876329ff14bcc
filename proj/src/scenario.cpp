#include "qpic/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qpic/fock_oracle.hpp"
#include "qpic/kernels.hpp"
#include "qpic/magnus.hpp"

namespace qpic {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

CheckResult make_check(std::string name, double value, double tol, std::string detail) {
  return {std::move(name), value, tol, value <= tol, std::move(detail)};
}

double cov_diff(const Mat2& a, const Mat2& b) { return max_abs_diff(a, b); }

Mat2 breathing(const Mat2& cov0, double kappa, double t) {
  return conjugate(Mat2::diag(std::exp(-kappa * t), std::exp(kappa * t)), cov0);
}

/// Passive map taking Schrodinger coordinates into the picture's frame.
SymplecticMap picture_frame(PictureTag picture, const DriveSpec& d, double t) {
  switch (picture) {
    case PictureTag::sp:
      return {Mat2::identity(), {}};
    case PictureTag::hp:
    case PictureTag::sip:
      return SymplecticMap::rotation(d.omega0 * t);
    case PictureTag::hip:
      return hip_frame_map(d, t);
  }
  return {Mat2::identity(), {}};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

bool RunSummary::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return !oracle || oracle->pass;
}

std::vector<TrajectorySample> compute_trajectory(const ScenarioConfig& cfg) {
  const std::vector<double> times = cfg.times();
  const std::vector<GaussianState> states =
      kernels::omp::evolve_batch(cfg.initial.state(), cfg.drive, cfg.picture, times);
  std::vector<TrajectorySample> out;
  out.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) out.push_back({times[k], states[k], cfg.picture});
  return out;
}

std::vector<CheckResult> trajectory_checks(const ScenarioConfig& cfg, const std::vector<TrajectorySample>& traj) {
  const GaussianState s0 = cfg.initial.state();
  const DriveSpec& d = cfg.drive;
  std::vector<CheckResult> out;

  double purity = 0.0;
  for (const auto& s : traj) purity = std::max(purity, std::abs(s.state.cov.det() - 0.25));
  out.push_back(make_check("purity", purity, 1e-12, "max |det cov - 1/4|"));

  if (cfg.picture == PictureTag::hip) {
    double drift = 0.0;
    for (const auto& s : traj) drift = std::max(drift, max_abs_diff(s.state, s0));
    out.push_back(make_check("static", drift, 1e-12, "max deviation from the initial state"));
    return out;
  }
  const bool rotating = cfg.picture == PictureTag::sp;

  switch (d.drive_kind()) {
    case DriveKind::free: {
      double worst = 0.0;
      if (rotating) {
        const double r0 = norm(s0.mean);
        for (const auto& s : traj) worst = std::max(worst, std::abs(norm(s.state.mean) - r0));
        out.push_back(make_check("circle", worst, 1e-12, "max | |mean| - |mean(0)| |"));
      } else {
        for (const auto& s : traj) worst = std::max(worst, max_abs_diff(s.state, s0));
        out.push_back(make_check("static", worst, 1e-12, "max deviation from the initial state"));
      }
      break;
    }
    case DriveKind::linear: {
      const LinearDrive& ld = d.linear_drive();
      double worst = 0.0;
      if (d.is_resonant()) {
        const double len = std::hypot(ld.a, ld.b);
        for (const auto& s : traj) {
          PhaseVector m = s.state.mean;
          if (rotating) m = rotation_matrix(d.omega0 * s.t) * m;
          const PhaseVector rel = m - s0.mean;
          const double r = len > 0.0 ? std::abs(ld.a * rel.x - ld.b * rel.p) / len : norm(rel);
          worst = std::max(worst, r);
        }
        out.push_back(make_check("line", worst, 1e-12,
                                 rotating ? "collinearity residual in the co-rotating frame" : "collinearity residual"));
      } else if (rotating) {
        for (const auto& s : traj) {
          const PhaseVector generator = rotation_matrix(-d.omega0 * s.t) * s0.mean;
          worst = std::max(worst, std::abs(norm_sq(s.state.mean - generator) - ip_centroid_radius_sq(d, s.t)));
        }
        out.push_back(make_check("glissette", worst, 1e-10, "max |lhs - rhs| of the centroid law"));
      } else {
        for (const auto& s : traj) {
          worst = std::max(worst, std::abs(norm_sq(s.state.mean - s0.mean) - ip_centroid_radius_sq(d, s.t)));
        }
        out.push_back(make_check("circle", worst, 1e-10, "max |(mean - mean(0))^2 - radius^2(t)|"));
      }
      double cov_drift = 0.0;
      for (const auto& s : traj) {
        const Mat2 expect = rotating ? conjugate(rotation_matrix(-d.omega0 * s.t), s0.cov.matrix()) : s0.cov.matrix();
        cov_drift = std::max(cov_drift, cov_diff(s.state.cov.matrix(), expect));
      }
      out.push_back(make_check("covariance", cov_drift, 1e-12,
                               rotating ? "deviation from the rotated initial covariance" : "drift of the covariance"));
      break;
    }
    case DriveKind::quadratic: {
      const double kappa = d.quadratic_drive().kappa;
      double worst = 0.0;
      for (const auto& s : traj) {
        Mat2 expect = breathing(s0.cov.matrix(), kappa, s.t);
        if (rotating) expect = conjugate(rotation_matrix(-d.omega0 * s.t), expect);
        worst = std::max(worst, cov_diff(s.state.cov.matrix(), expect));
      }
      out.push_back(make_check("breathing", worst, 1e-12,
                               rotating ? "deviation from the rotated breathing covariance"
                                        : "deviation from diag(e^-kt, e^kt) Sigma0 diag(e^-kt, e^kt)"));
      break;
    }
  }
  return out;
}

std::vector<std::size_t> frame_indices(const ScenarioConfig& cfg) {
  const std::size_t n = static_cast<std::size_t>(cfg.time.samples);
  const int frames = cfg.outputs.frames;
  if (frames <= 1) return {n - 1};
  std::vector<std::size_t> out;
  for (int k = 0; k < frames; ++k) {
    const double pos = static_cast<double>(k) * static_cast<double>(n - 1) / (frames - 1);
    const auto idx = static_cast<std::size_t>(std::llround(pos));
    if (out.empty() || out.back() != idx) out.push_back(idx);
  }
  return out;
}

FrameScene frame_scene(const ScenarioConfig& cfg, const std::vector<TrajectorySample>& traj, std::size_t index) {
  const DriveSpec& d = cfg.drive;
  const GaussianState s0 = cfg.initial.state();
  const TrajectorySample& now = traj.at(index);
  FrameScene scene;
  scene.contour = contour_1e(now.state);
  scene.trajectory.reserve(traj.size());
  for (const auto& s : traj) scene.trajectory.push_back(s.state.mean);

  if (cfg.picture == PictureTag::hip) {
    scene.vacuum_circles.push_back({now.state.mean, 1.0});
    return scene;
  }
  const bool rotating = cfg.picture == PictureTag::sp;
  switch (d.drive_kind()) {
    case DriveKind::free:
      if (rotating) scene.reference_circles.push_back({{0.0, 0.0}, norm(s0.mean)});
      break;
    case DriveKind::linear: {
      const LinearDrive& ld = d.linear_drive();
      if (d.is_resonant()) {
        if (!rotating) {
          const PhaseVector end = traj.back().state.mean;
          const PhaseVector span = end - s0.mean;
          scene.reference_lines.push_back({s0.mean - 0.25 * span, end + 0.25 * span});
        }
      } else if (rotating) {
        // Circle of the centroid law: centre R(-w0 t) mu, radius^2 from the IP circle.
        scene.reference_circles.push_back(
            {rotation_matrix(-d.omega0 * now.t) * s0.mean, std::sqrt(ip_centroid_radius_sq(d, now.t))});
      } else {
        const double k = ld.g / d.big_omega();
        scene.reference_circles.push_back({s0.mean + k * ld.conj_vector(), std::abs(k) * norm(ld.conj_vector())});
      }
      break;
    }
    case DriveKind::quadratic:
      scene.vacuum_circles.push_back({now.state.mean, 1.0});
      break;
  }
  return scene;
}

RunSummary run_scenario(const ScenarioConfig& cfg) {
  const auto start = clock_type::now();
  RunSummary summary;
  summary.config = cfg;
  summary.trajectory = compute_trajectory(cfg);
  summary.checks = trajectory_checks(cfg, summary.trajectory);

  if (cfg.oracle.enabled) {
    summary.oracle = compare_oracle(cfg);
    const OracleReport& o = *summary.oracle;
    CheckResult c{"oracle", std::max(o.max_mean_delta, o.max_cov_delta), o.moment_tolerance, o.pass,
                  o.error.empty() ? "closed form vs truncated Fock reference" : o.error};
    summary.checks.push_back(c);
  }

  if (!cfg.outputs.csv.empty()) {
    write_text_file(cfg.outputs.csv, format_csv(summary.trajectory));
    summary.files.push_back(cfg.outputs.csv);
  }
  if (!cfg.outputs.svg_dir.empty()) {
    int k = 0;
    for (std::size_t idx : frame_indices(cfg)) {
      char name[32];
      std::snprintf(name, sizeof name, "_f%02d.svg", k++);
      const std::filesystem::path p = cfg.outputs.svg_dir / (cfg.name + name);
      write_text_file(p, render_svg(frame_scene(cfg, summary.trajectory, idx)));
      summary.files.push_back(p);
    }
  }
  summary.seconds = seconds_since(start);
  if (!cfg.outputs.summary.empty()) {
    summary.files.push_back(cfg.outputs.summary);
    write_text_file(cfg.outputs.summary, summary_json(summary).dump(2) + "\n");
  }
  return summary;
}

OracleReport compare_oracle(const ScenarioConfig& cfg) {
  const auto start = clock_type::now();
  OracleReport report;
  const DriveSpec& d = cfg.drive;
  const GaussianState s0 = cfg.initial.state();
  const std::vector<double> times = cfg.times();
  report.cutoff = cfg.oracle.cutoff;
  report.steps = cfg.oracle.steps > 0 ? cfg.oracle.steps : fock::default_steps(d, cfg.time.t_max);
  report.moment_tolerance = d.drive_kind() == DriveKind::free ? 1e-8 : 1e-6;

  try {
    const fock::FockDensity rho0 = fock::squeezed_density(s0.mean, cfg.initial.s, report.cutoff);
    const fock::Hamiltonian h = fock::schrodinger_hamiltonian(d, report.cutoff);
    const std::vector<fock::FockDensity> coarse = fock::propagate_through(rho0, h, times, report.steps, 1);
    std::vector<fock::FockDensity> states;
    states.reserve(times.size());
    if (h.time_independent) {
      states = coarse;
    } else {
      const std::vector<fock::FockDensity> fine = fock::propagate_through(rho0, h, times, report.steps, 2);
      for (std::size_t k = 0; k < times.size(); ++k) {
        report.max_tail = std::max(report.max_tail, fock::tail_population(fine[k]));
        states.push_back(fock::richardson(coarse[k], fine[k]));
      }
    }
    for (const auto& c : coarse) report.max_tail = std::max(report.max_tail, fock::tail_population(c));

    for (std::size_t k = 0; k < times.size(); ++k) {
      const double t = times[k];
      const fock::OracleMoments m = fock::moments(states[k]);
      const SymplecticMap frame = picture_frame(cfg.picture, d, t);
      const PhaseVector mean = frame.apply(m.mean);
      const Mat2 cov = conjugate(frame.linear, m.cov);
      const GaussianState closed = evolve(s0, d, cfg.picture, t);
      OracleSampleDelta delta{t, max_abs_diff(mean, closed.mean), cov_diff(cov, closed.cov.matrix())};
      report.max_mean_delta = std::max(report.max_mean_delta, delta.mean_delta);
      report.max_cov_delta = std::max(report.max_cov_delta, delta.cov_delta);
      report.samples.push_back(delta);
    }

    std::vector<std::size_t> checkpoints = {0, times.size() / 2, times.size() - 1};
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
    for (std::size_t k : checkpoints) {
      const double t = times[k];
      const GaussianState closed = evolve_sp(s0, d, t);
      const fock::GridSpec grid = fock::grid_around(closed.mean, closed.cov.matrix());
      const fock::WignerField field = fock::wigner_from_rho(states[k], grid);
      double sup = 0.0;
      for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.np; ++j) {
          sup = std::max(sup, std::abs(field.at(i, j) - wigner_value(closed, {grid.x_at(i), grid.p_at(j)})));
        }
      }
      report.wigner.push_back({t, sup, field.integral, field.max_imag_residue});
      report.max_wigner_delta = std::max(report.max_wigner_delta, sup);
    }
  } catch (const fock::CutoffError& e) {
    report.error = std::string(e.what()) + " (tail mass " + fmt(e.tail_mass()) + ")";
    report.max_tail = std::max(report.max_tail, e.tail_mass());
  } catch (const fock::WindowError& e) {
    report.error = e.what();
  }

  report.pass = report.error.empty() && report.max_mean_delta <= report.moment_tolerance &&
                report.max_cov_delta <= report.moment_tolerance && report.max_wigner_delta <= report.wigner_tolerance &&
                report.max_tail <= 1e-8;
  report.seconds = seconds_since(start);
  return report;
}

MagnusReport magnus_check(const ScenarioConfig& cfg) {
  const DriveSpec& d = cfg.drive;
  if (d.drive_kind() != DriveKind::linear) throw ConfigError(0, "drive.kind", "magnus-check needs a linear drive");
  if (d.is_resonant()) throw ConfigError(0, "drive.omega1", "magnus-check needs Omega = omega0 + omega1 != 0");
  MagnusReport report;
  const double big = std::abs(d.big_omega());
  bool ok = true;
  for (int k = 1; k <= 8; ++k) {
    const double t = 2.0 * std::numbers::pi * k / (8.0 * big);
    MagnusRow row;
    row.t = t;
    row.a1_analytic = magnus_a1_analytic(d, t);
    row.a1_numeric = magnus_a1_numeric(d, t);
    row.a1_delta = std::abs(row.a1_analytic - row.a1_numeric);
    row.a2_analytic = magnus_a2_analytic(d, t);
    row.a2_numeric = magnus_a2_numeric(d, t);
    row.a2_delta = std::abs(row.a2_analytic - row.a2_numeric);
    row.a3_norm = magnus_a3_numeric(d, t);
    ok = ok && row.a1_delta <= report.a1_tolerance && row.a2_delta <= report.a2_tolerance &&
         row.a3_norm <= report.a3_tolerance;
    report.rows.push_back(row);
  }
  report.pass = ok;
  return report;
}

nlohmann::ordered_json oracle_json(const OracleReport& r, bool with_timings) {
  nlohmann::ordered_json j;
  j["cutoff"] = r.cutoff;
  j["steps"] = r.steps;
  j["max_mean_delta"] = r.max_mean_delta;
  j["max_cov_delta"] = r.max_cov_delta;
  j["max_wigner_delta"] = r.max_wigner_delta;
  j["max_tail_population"] = r.max_tail;
  j["moment_tolerance"] = r.moment_tolerance;
  j["wigner_tolerance"] = r.wigner_tolerance;
  j["wigner_checkpoints"] = nlohmann::ordered_json::array();
  for (const auto& w : r.wigner) {
    j["wigner_checkpoints"].push_back(
        {{"t", w.t}, {"sup_delta", w.sup_delta}, {"integral", w.integral}, {"imag_residue", w.imag_residue}});
  }
  if (!r.error.empty()) j["error"] = r.error;
  j["pass"] = r.pass;
  if (with_timings) j["seconds"] = r.seconds;
  return j;
}

nlohmann::ordered_json magnus_json(const MagnusReport& r) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"t", row.t},
                    {"a1_analytic", {row.a1_analytic.real(), row.a1_analytic.imag()}},
                    {"a1_numeric", {row.a1_numeric.real(), row.a1_numeric.imag()}},
                    {"a1_delta", row.a1_delta},
                    {"a2_analytic", row.a2_analytic},
                    {"a2_numeric", row.a2_numeric},
                    {"a2_delta", row.a2_delta},
                    {"a3_norm", row.a3_norm}});
  }
  return {{"rows", rows},
          {"tolerances", {{"a1", r.a1_tolerance}, {"a2", r.a2_tolerance}, {"a3", r.a3_tolerance}}},
          {"pass", r.pass}};
}

nlohmann::ordered_json summary_json(const RunSummary& s, bool with_timings) {
  const ScenarioConfig& c = s.config;
  nlohmann::ordered_json j;
  j["name"] = c.name;
  const GaussianState s0 = c.initial.state();
  j["initial"] = {{"mu_x", c.initial.mu_x},
                  {"s", c.initial.s},
                  {"sigma_x", std::sqrt(s0.cov.xx())},
                  {"sigma_p", std::sqrt(s0.cov.pp())}};
  nlohmann::ordered_json drive;
  drive["kind"] = to_string(c.drive.drive_kind());
  drive["omega0"] = c.drive.omega0;
  if (c.drive.drive_kind() == DriveKind::linear) {
    const LinearDrive& ld = c.drive.linear_drive();
    drive["g"] = ld.g;
    drive["a"] = ld.a;
    drive["b"] = ld.b;
    drive["omega1"] = ld.omega1;
    drive["Omega"] = c.drive.big_omega();
    drive["resonant"] = c.drive.is_resonant();
  } else if (c.drive.drive_kind() == DriveKind::quadratic) {
    drive["kappa"] = c.drive.quadratic_drive().kappa;
  }
  j["drive"] = drive;
  j["picture"] = to_string(c.picture);
  j["time"] = {{"t_max", c.time.t_max}, {"samples", c.time.samples}};
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& ch : s.checks) {
    j["checks"].push_back(
        {{"name", ch.name}, {"value", ch.value}, {"tolerance", ch.tolerance}, {"pass", ch.pass}, {"detail", ch.detail}});
  }
  if (s.oracle) j["oracle"] = oracle_json(*s.oracle, with_timings);
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : s.files) j["files"].push_back(f.filename().string());
  j["pass"] = s.pass();
  if (with_timings) j["seconds"] = s.seconds;
  return j;
}

std::vector<ScenarioConfig> figure_configs(const std::filesystem::path& out_dir) {
  const double pi = std::numbers::pi;
  const double s_fig = squeeze_for_sigma_x(1.0);
  auto base = [&](std::string name, double mu_x, DriveSpec drive, PictureTag picture, double t_max, int samples,
                  int frames) {
    ScenarioConfig c;
    c.name = name;
    c.initial = {mu_x, s_fig};
    c.drive = drive;
    c.picture = picture;
    c.time = {t_max, samples};
    c.outputs.csv = out_dir / (name + ".csv");
    c.outputs.svg_dir = out_dir / name;
    c.outputs.summary = out_dir / (name + ".json");
    c.outputs.frames = frames;
    return c;
  };
  auto linear = [](double omega1) { return DriveSpec::linear(1.0, LinearDrive{5.0, 1.0, -1.0, omega1}); };

  std::vector<ScenarioConfig> out;
  out.push_back(base("fig1", 4.0, DriveSpec::free(1.0), PictureTag::sp, 2.0 * pi, 257, 9));
  out.push_back(base("fig2", -2.0, linear(2.0), PictureTag::sip, 2.0 * pi / 3.0, 257, 9));

  struct Panel {
    const char* suffix;
    double omega1;
    int q;  // closing time is 2 pi q
  };
  const Panel panels[] = {{"a", 1.0 / 3.0, 3}, {"b", 2.0 / 3.0, 3}, {"c", 3.0 / 5.0, 5},
                          {"d", 3.0, 1},       {"e", 4.0, 1},       {"f", 33.0 / 7.0, 7},
                          {"g", 5.0, 1},       {"h", 34.0 / 5.0, 5}, {"i", 9.0, 1}};
  for (const Panel& p : panels) {
    out.push_back(base(std::string("fig3") + p.suffix, -2.0, linear(p.omega1), PictureTag::sp, 2.0 * pi * p.q,
                       1024 * p.q + 1, 1));
  }
  out.push_back(base("fig4", -2.0, linear(2.0), PictureTag::sp, pi, 1025, 9));
  out.push_back(base("fig5", -2.0, linear(-1.0), PictureTag::sip, 0.4, 65, 2));
  out.push_back(base("fig6", 0.0, DriveSpec::quadratic(1.0, 0.1), PictureTag::sip, 2.0 * pi, 257, 9));
  out.push_back(base("fig7", 0.0, DriveSpec::quadratic(1.0, 0.1), PictureTag::sp, 2.0 * pi, 257, 9));
  return out;
}

}  // namespace qpic
