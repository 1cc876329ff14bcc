#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qpic/fock_oracle.hpp"
#include "qpic/magnus.hpp"
#include "qpic/picture_engine.hpp"
#include "qpic/quadrature.hpp"

using namespace qpic;
using std::numbers::pi;

namespace {

DriveSpec fig2() { return DriveSpec::linear(1.0, LinearDrive{5.0, 1.0, -1.0, 2.0}); }

}  // namespace

TEST_CASE("V_I(t)") {
  const DriveSpec d = fig2();
  const cplx alpha = d.linear_drive().alpha();
  const LinearOperatorForm v0 = vi_at(d, 0.0);
  CHECK(std::abs(v0.c_a - 5.0 * alpha) < 1e-15);
  CHECK(std::abs(v0.c_ad - 5.0 * std::conj(alpha)) < 1e-15);
  CHECK(v0.c_id == cplx{});
  const LinearOperatorForm v1 = vi_at(d, 2 * pi / 3);
  CHECK(std::abs(v1.c_a - v0.c_a) < 1e-14);
  const LinearOperatorForm v = vi_at(d, 0.37);
  CHECK(std::abs(v.c_ad - std::conj(v.c_a)) < 1e-15);
}

TEST_CASE("commutator of linear forms is scalar") {
  const LinearOperatorForm f{{1.0, 2.0}, {0.5, -1.0}, {3.0, 0.0}};
  const LinearOperatorForm g{{-0.3, 0.1}, {2.0, 0.0}, {0.0, 1.0}};
  const LinearOperatorForm c = commutator(f, g);
  CHECK(c.c_a == cplx{});
  CHECK(c.c_ad == cplx{});
  CHECK(std::abs(c.c_id - (f.c_a * g.c_ad - f.c_ad * g.c_a)) < 1e-15);
  CHECK(std::abs(commutator(g, f).c_id + c.c_id) < 1e-15);
  CHECK(commutator(f, c).norm() == 0.0);
}

TEST_CASE("A1 closed form") {
  const DriveSpec d = fig2();
  CHECK(std::abs(magnus_a1_analytic(d, 0.0)) == 0.0);
  CHECK(std::abs(magnus_a1_analytic(d, 2 * pi / 3)) < 1e-15);
  const cplx expect = 2.0 * (5.0 / 3.0) * std::conj(d.linear_drive().alpha());
  CHECK(std::abs(magnus_a1_analytic(d, pi / 3) - expect) < 1e-14);
  CHECK(std::abs(magnus_a1_numeric(d, pi / 3) - expect) < 1e-10);
  CHECK_THROWS_AS(magnus_a1_analytic(DriveSpec::linear(1.0, LinearDrive{5.0, 1.0, -1.0, -1.0}), 1.0), ResonanceError);
}

TEST_CASE("A2 closed form") {
  const DriveSpec d = fig2();
  CHECK(magnus_a2_analytic(d, 0.0) == 0.0);
  CHECK(std::abs(magnus_a2_analytic(d, pi / 3) - 25 * pi / 9) < 1e-12);
  double last = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double v = magnus_a2_analytic(d, 0.05 * k);
    CHECK(v >= last);
    last = v;
  }
}

TEST_CASE("analytic and quadrature terms agree") {
  const DriveSpec d = fig2();
  for (double t : {0.7, 0.1, 1.9, 5.0, 4 * pi}) {
    CHECK(std::abs(magnus_a1_numeric(d, t) - magnus_a1_analytic(d, t)) < 1e-10);
    CHECK(std::abs(magnus_a2_numeric(d, t) - magnus_a2_analytic(d, t)) < 1e-10);
    CHECK(magnus_a3_numeric(d, t) <= 1e-12);
  }
  const MagnusTerms m = magnus_terms_numeric(d, 0.7);
  CHECK(std::abs(m.beta - magnus_a1_analytic(d, 0.7)) < 1e-10);
  CHECK(m.a3_norm >= 0.0);
}

TEST_CASE("property: exact truncation over random draws") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> g(0.0, 10.0), omega(0.5, 10.0), t(0.0, 4 * pi), ab(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const double big = omega(rng);
    const DriveSpec d = DriveSpec::linear(1.0, LinearDrive{g(rng), ab(rng), ab(rng), big - 1.0});
    const double tt = t(rng);
    CHECK(magnus_a3_numeric(d, tt) <= 1e-12);
    CHECK(std::abs(magnus_a1_numeric(d, tt) - magnus_a1_analytic(d, tt)) < 1e-10);
    CHECK(std::abs(magnus_a2_numeric(d, tt) - magnus_a2_analytic(d, tt)) < 1e-10);
  }
}

TEST_CASE("too few quadrature nodes is a configuration error") {
  CHECK_THROWS_AS(GaussLegendre(1), std::invalid_argument);
  CHECK_THROWS_AS(magnus_a1_numeric(fig2(), 1.0, QuadratureOptions{1, 64, 16}), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre rule") {
  const GaussLegendre rule(8);
  // exact for degree 15
  CHECK(std::abs(rule.integrate([](double x) { return std::pow(x, 14); }, -1.0, 1.0) - 2.0 / 15.0) < 1e-14);
  CHECK(std::abs(GaussLegendre(64).integrate([](double x) { return std::cos(x); }, 0.0, 30.0, 4) - std::sin(30.0)) <
        1e-13);
}

TEST_CASE("property: displacement of beta matches the IP mean shift") {
  for (double t : {0.0, 0.3, 1.1, 2.0, 7.5}) {
    const DriveSpec d = fig2();
    CHECK(max_abs_diff(displacement_shift(magnus_a1_analytic(d, t)), linear_ip_shift(d, t)) < 1e-12);
    const DriveSpec e = DriveSpec::linear(0.8, LinearDrive{1.7, -0.4, 2.2, -3.1});
    CHECK(max_abs_diff(displacement_shift(magnus_a1_analytic(e, t)), linear_ip_shift(e, t)) < 1e-12);
  }
}

TEST_CASE("IP unitary") {
  const DriveSpec d = fig2();
  const IpUnitary u0 = unitary_ip(d, 0.0);
  CHECK(std::abs(u0.displacement) == 0.0);
  CHECK(std::abs(u0.nu + u0.fixed) < 1e-15);
  CHECK(std::abs(u0.split_phase) < 1e-15);

  const IpUnitary u = unitary_ip(d, 2 * pi / 3);
  CHECK(std::abs(u.displacement) < 1e-14);

  // nu = -c e^{i Omega t} with c = g alpha^*/Omega, so the merge phase
  // Im(nu c^*) = -|c|^2 sin Omega t cancels the sine in -A2
  for (double t : {0.4, 1.3, 2.9}) {
    const IpUnitary v = unitary_ip(d, t);
    const double c2 = 25.0 / 9.0;
    CHECK(std::abs(v.phase + c2 * (3 * t - std::sin(3 * t))) < 1e-12);
    CHECK(std::abs(v.split_phase + c2 * 3 * t) < 1e-12);
    CHECK(std::abs(v.nu + v.fixed - v.displacement) < 1e-14);
  }
}

TEST_CASE("oracle: <0|U_I(t)|0> carries the closed-form phase and displacement") {
  const DriveSpec d = fig2();
  const int n = 60;
  const fock::Hamiltonian h = fock::interaction_hamiltonian(d, n);
  for (double t : {0.5, 1.2}) {
    const fock::CMatrix coarse = fock::propagator(h, 0.0, t, 2000);
    const fock::CMatrix fine = fock::propagator(h, 0.0, t, 4000);
    const cplx amp = (4.0 * fine(0, 0) - coarse(0, 0)) / 3.0;
    const IpUnitary u = unitary_ip(d, t);
    const cplx expect = std::polar(std::exp(-0.5 * std::norm(u.displacement)), -u.phase);
    CHECK(std::abs(amp - expect) < 1e-6);
    // and via the split form
    const fock::CMatrix split = fock::displacement_elements(u.nu, n) * fock::displacement_elements(u.fixed, n);
    CHECK(std::abs(std::polar(1.0, -u.split_phase) * split(0, 0) - expect) < 1e-10);
    // with the fixed factor on the left the merge phase doubles the sine instead
    const fock::CMatrix swapped = fock::displacement_elements(u.fixed, n) * fock::displacement_elements(u.nu, n);
    const double doubled = -(25.0 / 9.0) * (3 * t - 2 * std::sin(3 * t));
    CHECK(std::abs(std::polar(1.0, -doubled) * swapped(0, 0) - expect) < 1e-10);
  }
}

TEST_CASE("oracle: propagated state fidelity") {
  const DriveSpec d = fig2();
  const int n = 60;
  const double t = 0.5;
  const GaussianState s0 = ideal_squeezed(-2.0, -0.5 * std::log(2.0));
  const fock::FockDensity rho0 = fock::squeezed_density(s0.mean, -0.5 * std::log(2.0), n);
  const fock::Hamiltonian h = fock::interaction_hamiltonian(d, n);
  const fock::FockDensity oracle = fock::richardson(fock::propagate(rho0, h, t, 1000), fock::propagate(rho0, h, t, 2000));
  const fock::CMatrix disp = fock::displacement_elements(unitary_ip(d, t).displacement, n);
  const fock::CMatrix analytic = disp * rho0.matrix() * disp.adjoint();
  const double overlap = std::abs((oracle.matrix() * analytic).trace());
  const double norm = std::sqrt(oracle.purity() * (analytic * analytic).trace().real());
  CHECK(overlap / norm >= 1.0 - 1e-6);
}
