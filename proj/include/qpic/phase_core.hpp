#pragma once

// 2x2 real phase-space algebra. Quantities are dimensionless (hbar = 1,
// unit mass) and all angles are in radians.

#include <cmath>

namespace qpic {

struct PhaseVector {
  double x = 0.0;
  double p = 0.0;

  friend constexpr PhaseVector operator+(PhaseVector a, PhaseVector b) { return {a.x + b.x, a.p + b.p}; }
  friend constexpr PhaseVector operator-(PhaseVector a, PhaseVector b) { return {a.x - b.x, a.p - b.p}; }
  friend constexpr PhaseVector operator-(PhaseVector a) { return {-a.x, -a.p}; }
  friend constexpr PhaseVector operator*(double s, PhaseVector a) { return {s * a.x, s * a.p}; }
  friend constexpr bool operator==(PhaseVector, PhaseVector) = default;
};

inline double norm_sq(PhaseVector v) { return v.x * v.x + v.p * v.p; }
inline double norm(PhaseVector v) { return std::hypot(v.x, v.p); }
inline double max_abs_diff(PhaseVector a, PhaseVector b) {
  return std::fmax(std::fabs(a.x - b.x), std::fabs(a.p - b.p));
}

/// Row-major 2x2 matrix: [[xx, xp], [px, pp]].
struct Mat2 {
  double xx = 0.0;
  double xp = 0.0;
  double px = 0.0;
  double pp = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diag(double a, double b) { return {a, 0.0, 0.0, b}; }

  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.xx * b.xx + a.xp * b.px, a.xx * b.xp + a.xp * b.pp,
          a.px * b.xx + a.pp * b.px, a.px * b.xp + a.pp * b.pp};
}
constexpr PhaseVector operator*(const Mat2& m, PhaseVector v) {
  return {m.xx * v.x + m.xp * v.p, m.px * v.x + m.pp * v.p};
}
constexpr Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.xx + b.xx, a.xp + b.xp, a.px + b.px, a.pp + b.pp};
}
constexpr Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.xx - b.xx, a.xp - b.xp, a.px - b.px, a.pp - b.pp};
}
constexpr Mat2 operator*(double s, const Mat2& a) { return {s * a.xx, s * a.xp, s * a.px, s * a.pp}; }

constexpr Mat2 transpose(const Mat2& m) { return {m.xx, m.px, m.xp, m.pp}; }
constexpr double det(const Mat2& m) { return m.xx * m.pp - m.xp * m.px; }
constexpr double trace(const Mat2& m) { return m.xx + m.pp; }

/// Throws std::domain_error when the matrix is singular or non-finite.
Mat2 inverse(const Mat2& m);

double max_abs_diff(const Mat2& a, const Mat2& b);
bool is_finite(const Mat2& m);

/// Counterclockwise rotation by `theta`.
Mat2 rotation_matrix(double theta);

/// I - R(theta), evaluated without cancellation for small angles.
Mat2 identity_minus_rotation(double theta);

PhaseVector apply_affine(const Mat2& m, PhaseVector shift, PhaseVector r);

/// m * a * m^T
Mat2 conjugate(const Mat2& m, const Mat2& a);

/// Affine phase-space map r -> linear * r + shift. Rotations, squeezes,
/// displacements and their compositions.
struct SymplecticMap {
  Mat2 linear = Mat2::identity();
  PhaseVector shift{};

  PhaseVector apply(PhaseVector r) const { return apply_affine(linear, shift, r); }

  static SymplecticMap rotation(double theta) { return {rotation_matrix(theta), {}}; }
  static SymplecticMap squeeze(double s) { return {Mat2::diag(std::exp(-s), std::exp(s)), {}}; }
  static SymplecticMap displacement(PhaseVector d) { return {Mat2::identity(), d}; }
};

/// Map equivalent to applying `first` and then `second`.
SymplecticMap compose(const SymplecticMap& second, const SymplecticMap& first);
SymplecticMap inverse(const SymplecticMap& map);

}  // namespace qpic
