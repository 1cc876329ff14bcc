#include "qpic/phase_core.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpic {

Mat2 inverse(const Mat2& m) {
  const double d = det(m);
  if (!std::isfinite(d) || d == 0.0) {
    throw std::domain_error("inverse: singular 2x2 matrix");
  }
  return {m.pp / d, -m.xp / d, -m.px / d, m.xx / d};
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
  return std::max({std::fabs(a.xx - b.xx), std::fabs(a.xp - b.xp), std::fabs(a.px - b.px),
                   std::fabs(a.pp - b.pp)});
}

bool is_finite(const Mat2& m) {
  return std::isfinite(m.xx) && std::isfinite(m.xp) && std::isfinite(m.px) && std::isfinite(m.pp);
}

Mat2 rotation_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, -s, s, c};
}

Mat2 identity_minus_rotation(double theta) {
  const double h = std::sin(0.5 * theta);
  const double one_minus_cos = 2.0 * h * h;
  const double s = std::sin(theta);
  return {one_minus_cos, s, -s, one_minus_cos};
}

PhaseVector apply_affine(const Mat2& m, PhaseVector shift, PhaseVector r) { return m * r + shift; }

Mat2 conjugate(const Mat2& m, const Mat2& a) { return m * a * transpose(m); }

SymplecticMap compose(const SymplecticMap& second, const SymplecticMap& first) {
  return {second.linear * first.linear, second.linear * first.shift + second.shift};
}

SymplecticMap inverse(const SymplecticMap& map) {
  const Mat2 inv = inverse(map.linear);
  return {inv, -(inv * map.shift)};
}

}  // namespace qpic
