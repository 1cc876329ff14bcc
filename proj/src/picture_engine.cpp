#include "qpic/picture_engine.hpp"

#include <cmath>

namespace qpic {

const char* to_string(PictureTag tag) {
  switch (tag) {
    case PictureTag::sp: return "SP";
    case PictureTag::hp: return "HP";
    case PictureTag::sip: return "SIP";
    case PictureTag::hip: return "HIP";
  }
  return "?";
}

std::optional<PictureTag> parse_picture(std::string_view text) {
  if (text == "SP") return PictureTag::sp;
  if (text == "HP") return PictureTag::hp;
  if (text == "SIP") return PictureTag::sip;
  if (text == "HIP") return PictureTag::hip;
  return std::nullopt;
}

GaussianState evolve_free_sp(const GaussianState& s0, double omega0, double t) {
  return s0.transformed(SymplecticMap::rotation(-omega0 * t));
}

Mat2 heisenberg_quadrature_map(double omega0, double t) { return rotation_matrix(-omega0 * t); }

GaussianState to_hp_frame(const GaussianState& s_sp, double omega0, double t) {
  return s_sp.transformed(SymplecticMap::rotation(omega0 * t));
}

namespace {

void require_non_resonant(const DriveSpec& d) {
  if (std::fabs(d.big_omega()) < d.resonance_threshold()) {
    throw ResonanceError("linear drive is resonant (|Omega| < 1e-9 w0); use the resonant branch");
  }
}

GaussianState shifted(const GaussianState& s, PhaseVector shift) { return {s.mean + shift, s.cov}; }

}  // namespace

PhaseVector linear_ip_shift(const DriveSpec& d, double t) {
  const LinearDrive& l = d.linear_drive();
  require_non_resonant(d);
  const double omega = d.big_omega();
  return (l.g / omega) * (identity_minus_rotation(omega * t) * l.conj_vector());
}

PhaseVector linear_ip_shift_resonant(const DriveSpec& d, double t) {
  const LinearDrive& l = d.linear_drive();
  return {-l.g * l.b * t, -l.g * l.a * t};
}

GaussianState evolve_linear_ip(const GaussianState& s0, const DriveSpec& d, double t) {
  return shifted(s0, linear_ip_shift(d, t));
}

GaussianState evolve_linear_ip_resonant(const GaussianState& s0, const DriveSpec& d, double t) {
  if (!d.is_resonant()) {
    throw ResonanceError("evolve_linear_ip_resonant: drive is not resonant");
  }
  return shifted(s0, linear_ip_shift_resonant(d, t));
}

double ip_centroid_radius_sq(const DriveSpec& d, double t) {
  const LinearDrive& l = d.linear_drive();
  require_non_resonant(d);
  const double ratio = l.g / d.big_omega();
  const double h = std::sin(0.5 * d.big_omega() * t);
  // 2 (1 - cos) = 4 sin^2(theta/2)
  return 4.0 * ratio * ratio * (l.a * l.a + l.b * l.b) * h * h;
}

GaussianState evolve_linear_sp(const GaussianState& s0, const DriveSpec& d, double t) {
  const LinearDrive& l = d.linear_drive();
  require_non_resonant(d);
  const Mat2 clockwise = rotation_matrix(-d.omega0 * t);
  const PhaseVector v = l.conj_vector();
  // global clockwise turn of the initial mean, plus the drive term rotating
  // clockwise at w0 and counterclockwise at w1
  const PhaseVector drive = (l.g / d.big_omega()) * (clockwise * v - rotation_matrix(l.omega1 * t) * v);
  return {clockwise * s0.mean + drive, s0.cov.transformed(clockwise)};
}

double glissette_residual(const GaussianState& s0, const DriveSpec& d, double t) {
  const GaussianState s = evolve_linear_sp(s0, d, t);
  const PhaseVector generator = rotation_matrix(-d.omega0 * t) * s0.mean;
  return std::fabs(norm_sq(s.mean - generator) - ip_centroid_radius_sq(d, t));
}

GaussianState to_sip_frame(const GaussianState& s_sp, double omega0, double t) {
  return s_sp.transformed(SymplecticMap::rotation(omega0 * t));
}

SymplecticMap hip_frame_map(const DriveSpec& d, double t) {
  const SymplecticMap unrotate = SymplecticMap::rotation(d.omega0 * t);
  switch (d.drive_kind()) {
    case DriveKind::free:
      return unrotate;
    case DriveKind::linear: {
      const PhaseVector shift = d.is_resonant() ? linear_ip_shift_resonant(d, t) : linear_ip_shift(d, t);
      return compose(SymplecticMap::displacement(-shift), unrotate);
    }
    case DriveKind::quadratic: {
      const double k = d.quadratic_drive().kappa * t;
      return compose(SymplecticMap::squeeze(-k), unrotate);
    }
  }
  return unrotate;
}

GaussianState to_hip_frame(const GaussianState& s_sp, const DriveSpec& d, double t) {
  return s_sp.transformed(hip_frame_map(d, t));
}

GaussianState evolve_quadratic_ip(const GaussianState& s0, const DriveSpec& d, double t) {
  const double k = d.quadratic_drive().kappa * t;
  return s0.transformed(SymplecticMap::squeeze(k));
}

GaussianState evolve_quadratic_sp(const GaussianState& s0, const DriveSpec& d, double t) {
  return evolve_free_sp(evolve_quadratic_ip(s0, d, t), d.omega0, t);
}

GaussianState evolve_ip(const GaussianState& s0, const DriveSpec& d, double t) {
  switch (d.drive_kind()) {
    case DriveKind::free:
      return s0;
    case DriveKind::linear:
      return d.is_resonant() ? evolve_linear_ip_resonant(s0, d, t) : evolve_linear_ip(s0, d, t);
    case DriveKind::quadratic:
      return evolve_quadratic_ip(s0, d, t);
  }
  return s0;
}

GaussianState evolve_sp(const GaussianState& s0, const DriveSpec& d, double t) {
  switch (d.drive_kind()) {
    case DriveKind::free:
      return evolve_free_sp(s0, d.omega0, t);
    case DriveKind::linear:
      return d.is_resonant() ? evolve_free_sp(evolve_linear_ip_resonant(s0, d, t), d.omega0, t)
                             : evolve_linear_sp(s0, d, t);
    case DriveKind::quadratic:
      return evolve_quadratic_sp(s0, d, t);
  }
  return s0;
}

GaussianState evolve(const GaussianState& s0, const DriveSpec& d, PictureTag picture, double t) {
  switch (picture) {
    case PictureTag::sp:
      return evolve_sp(s0, d, t);
    case PictureTag::hp:
      return to_hp_frame(evolve_sp(s0, d, t), d.omega0, t);
    case PictureTag::sip:
      return evolve_ip(s0, d, t);
    case PictureTag::hip:
      return to_hip_frame(evolve_sp(s0, d, t), d, t);
  }
  return s0;
}

std::vector<TrajectorySample> sample_trajectory(const GaussianState& s0, const DriveSpec& d, PictureTag picture,
                                                std::span<const double> times) {
  std::vector<TrajectorySample> out;
  out.reserve(times.size());
  for (double t : times) {
    out.push_back({t, evolve(s0, d, picture, t), picture});
  }
  return out;
}

std::vector<double> uniform_times(double t_max, int count) {
  std::vector<double> times(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    times[static_cast<std::size_t>(i)] = (i == count - 1) ? t_max : t_max * i / (count - 1);
  }
  return times;
}

}  // namespace qpic
