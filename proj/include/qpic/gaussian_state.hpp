#pragma once

// Gaussian Wigner states: a mean phase-space vector plus a 2x2 covariance.
//
// The covariance Sigma is stored directly (not its inverse). A pure state has
// det Sigma = 1/4; the vacuum has Sigma = I/2.

#include <complex>

#include "qpic/phase_core.hpp"

namespace qpic {

/// Symmetric positive-definite 2x2 covariance (sigma_xx, sigma_xp, sigma_pp).
class CovarianceMatrix {
 public:
  /// Throws std::domain_error unless the entries describe a finite SPD matrix.
  CovarianceMatrix(double xx, double xp, double pp);

  /// Accepts a matrix that is symmetric up to rounding (relative 1e-12) and
  /// stores its symmetric part.
  static CovarianceMatrix from_matrix(const Mat2& m);

  double xx() const { return xx_; }
  double xp() const { return xp_; }
  double pp() const { return pp_; }
  Mat2 matrix() const { return {xx_, xp_, xp_, pp_}; }
  double det() const { return xx_ * pp_ - xp_ * xp_; }
  Mat2 inverse() const;

  /// Eigenvalues, larger first.
  double eigen_major() const;
  double eigen_minor() const;

  /// m * Sigma * m^T
  CovarianceMatrix transformed(const Mat2& m) const { return from_matrix(conjugate(m, matrix())); }

  friend bool operator==(const CovarianceMatrix&, const CovarianceMatrix&) = default;

 private:
  double xx_;
  double xp_;
  double pp_;
};

struct GaussianState {
  PhaseVector mean{};
  CovarianceMatrix cov{0.5, 0.0, 0.5};

  /// State after the active phase-space map r -> M r + c.
  GaussianState transformed(const SymplecticMap& map) const {
    return {map.apply(mean), cov.transformed(map.linear)};
  }

  friend bool operator==(const GaussianState&, const GaussianState&) = default;
};

/// Largest absolute difference over mean and covariance entries.
double max_abs_diff(const GaussianState& a, const GaussianState& b);

/// Squeezing zeta = s e^{i theta}. Dynamics are implemented for theta = 0;
/// a nonzero theta only rotates the initial covariance.
struct SqueezeSpec {
  double s = 0.0;
  double theta = 0.0;
};

/// Displacement alpha = (a + i b) / sqrt(2); shifts the mean by (a, b).
struct DisplacementSpec {
  double a = 0.0;
  double b = 0.0;

  std::complex<double> alpha() const;
  PhaseVector shift() const { return {a, b}; }
};

struct ContourEllipse {
  PhaseVector center{};
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double orientation = 0.0;  ///< major-axis angle from the x-axis, in (-pi/2, pi/2]
};

GaussianState vacuum();

/// Displaced squeezed vacuum D(mu_x/sqrt2) S(s)|0>: mean (mu_x, 0),
/// cov diag(e^{-2s}/2, e^{2s}/2).
GaussianState ideal_squeezed(double mu_x, double s);

/// D(alpha) S(zeta)|0>. The squeezing ellipse is rotated by theta/2.
GaussianState squeezed_state(const DisplacementSpec& displacement, const SqueezeSpec& squeeze);

/// Squeezing strength giving position width sigma_x for a pure state.
double squeeze_for_sigma_x(double sigma_x);

/// Pointwise Wigner density. Throws std::domain_error for a singular covariance.
double wigner_value(const GaussianState& state, PhaseVector r);

/// Symmetric characteristic function Tr[rho D(chi)] with
/// chi = (-eta + i xi)/sqrt(2), i.e. <exp(i(xi x + eta p))>.
std::complex<double> characteristic_value(const GaussianState& state, double xi, double eta);

/// Level set where W = W_peak / e.
ContourEllipse contour_1e(const GaussianState& state);

}  // namespace qpic
