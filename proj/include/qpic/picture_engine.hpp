#pragma once

// Closed-form Gaussian evolution of the driven oscillator in the Schrodinger
// (SP), Heisenberg (HP), Schrodinger-interaction (SIP) and
// Heisenberg-interaction (HIP) pictures.
//
// Conventions: R(theta) is a counterclockwise rotation. Free evolution moves
// phase space clockwise, so an SP state at time t is R(-w0 t) applied to the
// interaction-picture state.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qpic/drive.hpp"
#include "qpic/gaussian_state.hpp"

namespace qpic {

enum class PictureTag { sp, hp, sip, hip };

const char* to_string(PictureTag tag);
std::optional<PictureTag> parse_picture(std::string_view text);

struct TrajectorySample {
  double t = 0.0;
  GaussianState state;
  PictureTag picture = PictureTag::sp;
};

// --- free oscillator ------------------------------------------------------

GaussianState evolve_free_sp(const GaussianState& s0, double omega0, double t);

/// Matrix taking (x(0), p(0)) to the Heisenberg operators (x(t), p(t)).
Mat2 heisenberg_quadrature_map(double omega0, double t);

/// Passive frame r' = R(w0 t) r. Undoes free evolution.
GaussianState to_hp_frame(const GaussianState& s_sp, double omega0, double t);

// --- linear drive ---------------------------------------------------------

/// Drive-induced IP displacement (g/Omega)(I - R(Omega t))(a, -b).
/// Throws ResonanceError when |Omega| is below the drive's threshold.
PhaseVector linear_ip_shift(const DriveSpec& d, double t);

/// Resonant (Omega = 0) IP displacement (-g b t, -g a t).
PhaseVector linear_ip_shift_resonant(const DriveSpec& d, double t);

GaussianState evolve_linear_ip(const GaussianState& s0, const DriveSpec& d, double t);
GaussianState evolve_linear_ip_resonant(const GaussianState& s0, const DriveSpec& d, double t);

/// Squared distance of the IP centroid from its starting point.
double ip_centroid_radius_sq(const DriveSpec& d, double t);

GaussianState evolve_linear_sp(const GaussianState& s0, const DriveSpec& d, double t);

/// |lhs - rhs| of the SP centroid law
/// (<x> - mu_x cos w0t)^2 + (<p> + mu_x sin w0t)^2 = 2 (g/Omega)^2 (a^2+b^2)(1 - cos Omega t),
/// generalised to an arbitrary initial mean.
double glissette_residual(const GaussianState& s0, const DriveSpec& d, double t);

/// Frame r' = R(w0 t) r; maps an SP state onto the SIP state.
GaussianState to_sip_frame(const GaussianState& s_sp, double omega0, double t);

/// Fully co-moving frame in which the Wigner function is static.
SymplecticMap hip_frame_map(const DriveSpec& d, double t);
GaussianState to_hip_frame(const GaussianState& s_sp, const DriveSpec& d, double t);

// --- quadratic drive ------------------------------------------------------

/// Breathing: cov conjugated by diag(e^{-kt}, e^{kt}); the mean is scaled the same way.
GaussianState evolve_quadratic_ip(const GaussianState& s0, const DriveSpec& d, double t);
GaussianState evolve_quadratic_sp(const GaussianState& s0, const DriveSpec& d, double t);

// --- dispatch -------------------------------------------------------------

/// Interaction-picture state for any drive (free: static; resonant linear
/// drives take the resonant branch).
GaussianState evolve_ip(const GaussianState& s0, const DriveSpec& d, double t);
GaussianState evolve_sp(const GaussianState& s0, const DriveSpec& d, double t);

/// State as seen in `picture`:
///   sp  - Schrodinger state
///   hp  - SP state in the passive frame R(w0 t)
///   sip - interaction-picture evolution
///   hip - SP state in the co-moving frame (static)
GaussianState evolve(const GaussianState& s0, const DriveSpec& d, PictureTag picture, double t);

/// Serial reference loop over sample times.
std::vector<TrajectorySample> sample_trajectory(const GaussianState& s0, const DriveSpec& d, PictureTag picture,
                                                std::span<const double> times);

/// Uniform grid of `count` times on [0, t_max].
std::vector<double> uniform_times(double t_max, int count);

}  // namespace qpic
