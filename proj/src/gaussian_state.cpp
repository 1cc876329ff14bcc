#include "qpic/gaussian_state.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qpic {

CovarianceMatrix::CovarianceMatrix(double xx, double xp, double pp) : xx_(xx), xp_(xp), pp_(pp) {
  if (!std::isfinite(xx) || !std::isfinite(xp) || !std::isfinite(pp)) {
    throw std::domain_error("covariance: non-finite entry");
  }
  if (!(xx > 0.0) || !(pp > 0.0) || !(det() > 0.0)) {
    throw std::domain_error("covariance: not positive definite (xx=" + std::to_string(xx) +
                            ", xp=" + std::to_string(xp) + ", pp=" + std::to_string(pp) + ")");
  }
}

CovarianceMatrix CovarianceMatrix::from_matrix(const Mat2& m) {
  const double scale = std::max({std::fabs(m.xx), std::fabs(m.pp), std::fabs(m.xp), 1e-300});
  if (std::fabs(m.xp - m.px) > 1e-12 * scale) {
    throw std::domain_error("covariance: matrix is not symmetric");
  }
  return {m.xx, 0.5 * (m.xp + m.px), m.pp};
}

Mat2 CovarianceMatrix::inverse() const {
  const double d = det();
  return {pp_ / d, -xp_ / d, -xp_ / d, xx_ / d};
}

double CovarianceMatrix::eigen_major() const {
  const double half_tr = 0.5 * (xx_ + pp_);
  const double r = std::hypot(0.5 * (xx_ - pp_), xp_);
  return half_tr + r;
}

double CovarianceMatrix::eigen_minor() const {
  // det / major avoids cancellation for strongly squeezed states
  return det() / eigen_major();
}

double max_abs_diff(const GaussianState& a, const GaussianState& b) {
  return std::max({max_abs_diff(a.mean, b.mean), std::fabs(a.cov.xx() - b.cov.xx()),
                   std::fabs(a.cov.xp() - b.cov.xp()), std::fabs(a.cov.pp() - b.cov.pp())});
}

std::complex<double> DisplacementSpec::alpha() const {
  return std::complex<double>(a, b) / std::numbers::sqrt2;
}

GaussianState vacuum() { return {{0.0, 0.0}, CovarianceMatrix(0.5, 0.0, 0.5)}; }

GaussianState ideal_squeezed(double mu_x, double s) {
  return squeezed_state({mu_x, 0.0}, {s, 0.0});
}

GaussianState squeezed_state(const DisplacementSpec& displacement, const SqueezeSpec& squeeze) {
  if (!std::isfinite(displacement.a) || !std::isfinite(displacement.b) || !std::isfinite(squeeze.s) ||
      !std::isfinite(squeeze.theta)) {
    throw std::domain_error("squeezed_state: non-finite parameter");
  }
  const CovarianceMatrix base(0.5 * std::exp(-2.0 * squeeze.s), 0.0, 0.5 * std::exp(2.0 * squeeze.s));
  if (squeeze.theta == 0.0) {
    return {displacement.shift(), base};
  }
  return {displacement.shift(), base.transformed(rotation_matrix(0.5 * squeeze.theta))};
}

double squeeze_for_sigma_x(double sigma_x) {
  if (!(sigma_x > 0.0)) {
    throw std::domain_error("squeeze_for_sigma_x: sigma_x must be positive");
  }
  // e^{-2s} = 2 sigma_x^2
  return -0.5 * std::log(2.0 * sigma_x * sigma_x);
}

double wigner_value(const GaussianState& state, PhaseVector r) {
  const double d = state.cov.det();
  if (!(d > 0.0)) {
    throw std::domain_error("wigner_value: singular covariance");
  }
  const Mat2 inv = state.cov.inverse();
  const PhaseVector u = r - state.mean;
  const double q = u.x * (inv.xx * u.x + inv.xp * u.p) + u.p * (inv.px * u.x + inv.pp * u.p);
  // 1/(2 pi sqrt(det)) reduces to 1/pi for pure states
  return std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(d));
}

std::complex<double> characteristic_value(const GaussianState& state, double xi, double eta) {
  const double phase = xi * state.mean.x + eta * state.mean.p;
  const double quad = state.cov.xx() * xi * xi + 2.0 * state.cov.xp() * xi * eta + state.cov.pp() * eta * eta;
  return std::polar(std::exp(-0.5 * quad), phase);
}

ContourEllipse contour_1e(const GaussianState& state) {
  const double major = state.cov.eigen_major();
  const double minor = state.cov.eigen_minor();
  const double split = std::hypot(state.cov.xx() - state.cov.pp(), 2.0 * state.cov.xp());
  double orientation = 0.0;
  if (split > 1e-14 * (state.cov.xx() + state.cov.pp())) {
    orientation = 0.5 * std::atan2(2.0 * state.cov.xp(), state.cov.xx() - state.cov.pp());
  }
  // (r-mu)^T Sigma^{-1} (r-mu) = 2
  return {state.mean, std::sqrt(2.0 * major), std::sqrt(2.0 * minor), orientation};
}

}  // namespace qpic
