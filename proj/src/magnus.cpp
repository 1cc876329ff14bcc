#include "qpic/magnus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpic/quadrature.hpp"

namespace qpic {

namespace {

constexpr cplx kI{0.0, 1.0};

double require_omega(const DriveSpec& d) {
  const double omega = d.big_omega();
  if (std::fabs(omega) < d.resonance_threshold()) {
    throw ResonanceError("Magnus closed form is singular at Omega = 0");
  }
  return omega;
}

// Panels of at most four drive periods keep each Gauss-Legendre panel in its
// spectrally convergent regime.
int panels_for(const DriveSpec& d, double span) {
  const double phase = std::fabs(d.big_omega() * span);
  return std::max(1, static_cast<int>(std::ceil(phase / (8.0 * std::numbers::pi))));
}

}  // namespace

LinearOperatorForm commutator(const LinearOperatorForm& f, const LinearOperatorForm& g) {
  // [c1 a + d1 a^dag, c2 a + d2 a^dag] = (c1 d2 - d1 c2) [a, a^dag]
  return {cplx{}, cplx{}, f.c_a * g.c_ad - f.c_ad * g.c_a};
}

LinearOperatorForm vi_at(const DriveSpec& d, double t) {
  const LinearDrive& l = d.linear_drive();
  const cplx alpha = l.alpha();
  const cplx rot = std::polar(1.0, d.big_omega() * t);
  return {l.g * alpha * std::conj(rot), l.g * std::conj(alpha) * rot, cplx{}};
}

cplx magnus_a1_analytic(const DriveSpec& d, double t) {
  const double omega = require_omega(d);
  const LinearDrive& l = d.linear_drive();
  // 1 - e^{i theta} = 2 sin^2(theta/2) - i sin(theta)
  const double theta = omega * t;
  const double h = std::sin(0.5 * theta);
  const cplx one_minus = {2.0 * h * h, -std::sin(theta)};
  return (l.g / omega) * std::conj(l.alpha()) * one_minus;
}

double magnus_a2_analytic(const DriveSpec& d, double t) {
  const double omega = require_omega(d);
  const LinearDrive& l = d.linear_drive();
  const double amp = l.g * l.g * std::norm(l.alpha()) / (omega * omega);
  return amp * (omega * t - std::sin(omega * t));
}

LinearOperatorForm magnus_a1_form_numeric(const DriveSpec& d, double t, const QuadratureOptions& q) {
  const GaussLegendre rule(q.nodes_a1);
  return rule.integrate([&](double s) { return vi_at(d, s); }, 0.0, t, panels_for(d, t));
}

cplx magnus_a1_numeric(const DriveSpec& d, double t, const QuadratureOptions& q) {
  // -i A1 = beta a^dag - beta^* a
  return -kI * magnus_a1_form_numeric(d, t, q).c_ad;
}

double magnus_a2_numeric(const DriveSpec& d, double t, const QuadratureOptions& q) {
  const GaussLegendre rule(q.nodes_a2);
  const cplx integral = rule.integrate(
      [&](double t2) {
        const LinearOperatorForm v2 = vi_at(d, t2);
        return rule.integrate([&](double t1) { return commutator(vi_at(d, t1), v2).c_id; }, 0.0, t2,
                              panels_for(d, t2));
      },
      0.0, t, panels_for(d, t));
  return (integral / (2.0 * kI)).real();
}

double magnus_a3_numeric(const DriveSpec& d, double t, const QuadratureOptions& q) {
  const GaussLegendre rule(q.nodes_a3);
  const LinearOperatorForm total = rule.integrate(
      [&](double t3) {
        const LinearOperatorForm v3 = vi_at(d, t3);
        return rule.integrate(
            [&](double t2) {
              const LinearOperatorForm v2 = vi_at(d, t2);
              return rule.integrate(
                  [&](double t1) {
                    const LinearOperatorForm v1 = vi_at(d, t1);
                    return commutator(v1, commutator(v2, v3)) + commutator(v3, commutator(v2, v1));
                  },
                  0.0, t2);
            },
            0.0, t3);
      },
      0.0, t);
  // 1 / (3! i^2)
  return ((-1.0 / 6.0) * total).norm();
}

MagnusTerms magnus_terms_numeric(const DriveSpec& d, double t, const QuadratureOptions& q) {
  return {magnus_a1_numeric(d, t, q), magnus_a2_numeric(d, t, q), magnus_a3_numeric(d, t, q)};
}

IpUnitary unitary_ip(const DriveSpec& d, double t) {
  const double omega = require_omega(d);
  const LinearDrive& l = d.linear_drive();
  IpUnitary u;
  u.displacement = magnus_a1_analytic(d, t);
  u.fixed = (l.g / omega) * std::conj(l.alpha());
  u.nu = -u.fixed * std::polar(1.0, omega * t);
  // Time-ordered propagation (later time on the left) gives the scalar term
  // with the opposite sign of magnus_a2_analytic.
  u.phase = -magnus_a2_analytic(d, t);
  // D(nu) D(c) = e^{i Im(nu c^*)} D(nu + c)
  u.split_phase = u.phase + std::imag(u.nu * std::conj(u.fixed));
  return u;
}

PhaseVector displacement_shift(cplx beta) {
  return {std::numbers::sqrt2 * beta.real(), std::numbers::sqrt2 * beta.imag()};
}

}  // namespace qpic
