#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qpic/fock_oracle.hpp"
#include "qpic/picture_engine.hpp"

using namespace qpic;
using namespace qpic::fock;
using std::numbers::pi;

namespace {

const double kFigS = -0.5 * std::log(2.0);

double mat_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

double moment_delta(const OracleMoments& m, const GaussianState& s) {
  return std::max(max_abs_diff(m.mean, s.mean), max_abs_diff(m.cov, s.cov.matrix()));
}

}  // namespace

TEST_CASE("ladder operators") {
  const LadderOps two = ladder_ops(2);
  CMatrix expect = CMatrix::Zero(3, 3);
  expect(0, 1) = 1.0;
  expect(1, 2) = std::sqrt(2.0);
  CHECK(mat_diff(two.a.matrix(), expect) == 0.0);
  CHECK(mat_diff(two.ad.matrix(), expect.adjoint()) == 0.0);

  const int n = 12;
  const LadderOps l = ladder_ops(n);
  const CMatrix comm = l.a.matrix() * l.ad.matrix() - l.ad.matrix() * l.a.matrix();
  // identity except in the last row, where truncation shows
  for (int k = 0; k < n; ++k) CHECK(std::abs(comm(k, k) - 1.0) < 1e-14);
  CHECK(std::abs(comm(n, n) + static_cast<double>(n)) < 1e-12);

  CVector vac = CVector::Zero(n + 1);
  vac(0) = 1.0;
  CHECK((l.a.matrix() * vac).norm() == 0.0);
  CHECK_THROWS(ladder_ops(0));
}

TEST_CASE("quadrature operators") {
  const int n = 20;
  const CMatrix x = position_op(n);
  const CMatrix p = momentum_op(n);
  CHECK(mat_diff(x, x.adjoint()) < 1e-15);
  CHECK(mat_diff(p, p.adjoint()) < 1e-15);
  const CMatrix comm = x * p - p * x;
  for (int k = 0; k < n; ++k) CHECK(std::abs(comm(k, k) - cplx(0.0, 1.0)) < 1e-14);
}

TEST_CASE("displacement operator") {
  const cplx alpha{1.0, 0.5};
  const FockOperator d = displacement_op(alpha, 60);
  CHECK(std::abs(d.matrix()(0, 0) - std::exp(-0.5 * std::norm(alpha))) < 1e-12);

  const FockOperator d1 = displacement_op(0.8, 40);
  const FockOperator d2 = displacement_op(-0.8, 40);
  // the low corner is unaffected by truncation
  const CMatrix prod = d1.matrix() * d2.matrix();
  CHECK(mat_diff(prod.topLeftCorner(20, 20), CMatrix::Identity(20, 20)) < 1e-12);

  CHECK_THROWS_AS(displacement_op(4.0, 60), CutoffError);
}

TEST_CASE("displacement elements agree with the exponentiated generator") {
  const cplx alpha{-0.9, 1.2};
  const CMatrix exact = displacement_elements(alpha, 60);
  const CMatrix expm = displacement_op(alpha, 120).matrix().topLeftCorner(61, 61);
  CHECK(mat_diff(exact.topLeftCorner(30, 30), expm.topLeftCorner(30, 30)) < 1e-12);
  CHECK(std::abs(exact(0, 0) - std::exp(-0.5 * std::norm(alpha))) < 1e-15);
  // D(alpha)|0> is the coherent state
  for (int m = 0; m < 10; ++m) {
    const cplx coh = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, m) / std::sqrt(std::tgamma(m + 1.0));
    CHECK(std::abs(exact(m, 0) - coh) < 1e-14);
  }
}

TEST_CASE("squeeze operator") {
  const int n = 80;
  const FockOperator s = squeeze_op(-kFigS, n);
  CMatrix rho = CMatrix::Zero(n + 1, n + 1);
  const CVector psi = s.matrix().col(0);
  rho = psi * psi.adjoint();
  const OracleMoments m = moments(FockDensity::unchecked(rho));
  // positive real zeta squeezes x
  CHECK(std::abs(m.cov.xx - 0.5 * std::exp(2 * kFigS)) < 1e-8);
  CHECK(std::abs(m.cov.pp - 0.5 * std::exp(-2 * kFigS)) < 1e-8);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
  CHECK_THROWS_AS(squeeze_op(2.0, n), CutoffError);
  CHECK_THROWS_AS(squeeze_op(0.5, 30), CutoffError);
}

TEST_CASE("squeezed density matches figure parameters") {
  const FockDensity rho = squeezed_density({4.0, 0.0}, kFigS, 60);
  const OracleMoments m = moments(rho);
  CHECK(moment_delta(m, ideal_squeezed(4.0, kFigS)) < 1e-10);
  CHECK(std::abs(rho.purity() - 1.0) < 1e-12);
  CHECK(tail_population(rho) < 1e-8);
  CHECK_THROWS_AS(squeezed_density({12.0, 0.0}, kFigS, 60), CutoffError);
}

TEST_CASE("density validation") {
  CMatrix bad = CMatrix::Zero(3, 3);
  bad(0, 0) = 0.5;
  CHECK_THROWS(FockDensity(bad));
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS(FockDensity(bad));
  CMatrix nonherm = CMatrix::Zero(2, 2);
  nonherm(0, 0) = 1.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS(FockDensity(nonherm));
}

TEST_CASE("SU(1,1) algebra") {
  const int n = 30;
  const Su11Ops k = su11_ops(n);
  const CMatrix c1 = k.km.matrix() * k.kp.matrix() - k.kp.matrix() * k.km.matrix();
  const CMatrix c2 = k.k0.matrix() * k.kp.matrix() - k.kp.matrix() * k.k0.matrix();
  const CMatrix c3 = k.k0.matrix() * k.km.matrix() - k.km.matrix() * k.k0.matrix();
  // rows within two levels of the cut feel truncation
  const int m = n - 1;
  CHECK(mat_diff(c1.topLeftCorner(m, m), 2.0 * k.k0.matrix().topLeftCorner(m, m)) < 1e-12);
  CHECK(mat_diff(c2.topLeftCorner(m, m), k.kp.matrix().topLeftCorner(m, m)) < 1e-12);
  CHECK(mat_diff(c3.topLeftCorner(m, m), -k.km.matrix().topLeftCorner(m, m)) < 1e-12);
}

TEST_CASE("the two quadratic Hamiltonian forms agree") {
  const DriveSpec d = DriveSpec::quadratic(1.0, 0.1);
  for (double t : {0.0, 0.3, 2.0}) {
    CHECK(mat_diff(quadratic_hamiltonian_su11(d, 40, t), quadratic_hamiltonian_ladder(d, 40, t)) < 1e-14);
  }
}

TEST_CASE("expm_hermitian") {
  const CMatrix x = position_op(10);
  const CMatrix u = expm_hermitian(x, 0.7);
  CHECK(mat_diff(u * u.adjoint(), CMatrix::Identity(11, 11)) < 1e-13);
  CHECK(mat_diff(expm_hermitian(x, 0.0), CMatrix::Identity(11, 11)) < 1e-14);
}

TEST_CASE("free evolution over one period returns the state") {
  const FockDensity rho0 = squeezed_density({3.0, 0.0}, kFigS, 60);
  const Hamiltonian h = schrodinger_hamiltonian(DriveSpec::free(1.0), 60);
  CHECK(h.time_independent);
  const FockDensity rho = propagate(rho0, h, 2 * pi, 1);
  CHECK(mat_diff(rho.matrix(), rho0.matrix()) < 1e-10);

  const FockDensity quarter = propagate(rho0, h, pi / 2, 1);
  // clockwise: (3, 0) -> (0, -3)
  CHECK(moment_delta(moments(quarter), evolve_free_sp(ideal_squeezed(3.0, kFigS), 1.0, pi / 2)) < 1e-10);
  CHECK(std::abs(moments(quarter).mean.p + 3.0) < 1e-10);
}

TEST_CASE("linear drive moments against the closed form") {
  const DriveSpec d = DriveSpec::linear(1.0, LinearDrive{3.0, 1.0, -1.0, 2.0});
  const GaussianState s0 = ideal_squeezed(-2.0, kFigS);
  const FockDensity rho0 = squeezed_density(s0.mean, kFigS, 60);
  const Hamiltonian h = schrodinger_hamiltonian(d, 60);
  const double t = 1.1;
  const GaussianState exact = evolve_sp(s0, d, t);

  const double e1 = moment_delta(moments(propagate(rho0, h, t, 200)), exact);
  const double e2 = moment_delta(moments(propagate(rho0, h, t, 400)), exact);
  // midpoint rule is second order
  CHECK(e1 / e2 > 3.5);

  const FockDensity coarse = propagate(rho0, h, t, 2000);
  const FockDensity fine = propagate(rho0, h, t, 4000);
  CHECK(moment_delta(moments(richardson(coarse, fine)), exact) < 1e-6);
}

TEST_CASE("propagate_through matches single propagation") {
  const DriveSpec d = DriveSpec::linear(1.0, LinearDrive{2.0, 0.5, 0.5, 1.5});
  const FockDensity rho0 = squeezed_density({1.0, 0.0}, kFigS, 60);
  const Hamiltonian h = schrodinger_hamiltonian(d, 60);
  const std::vector<FockDensity> seq = propagate_through(rho0, h, {0.0, 0.5, 1.0}, 400);
  REQUIRE(seq.size() == 3);
  CHECK(mat_diff(seq[0].matrix(), rho0.matrix()) == 0.0);
  CHECK(mat_diff(seq[2].matrix(), propagate(rho0, h, 1.0, 400).matrix()) < 1e-12);
  const std::vector<FockDensity> doubled = propagate_through(rho0, h, {0.0, 0.5, 1.0}, 400, 2);
  CHECK(mat_diff(doubled[2].matrix(), propagate(rho0, h, 1.0, 800).matrix()) < 1e-12);
}

TEST_CASE("quadratic drive moments against the closed form") {
  const DriveSpec d = DriveSpec::quadratic(1.0, 0.1);
  const GaussianState s0 = ideal_squeezed(0.0, kFigS);
  const FockDensity rho0 = squeezed_density(s0.mean, kFigS, 60);
  const Hamiltonian h = interaction_hamiltonian(d, 60);
  CHECK(h.time_independent);
  const FockDensity rho = propagate(rho0, h, 1.0, 1);
  CHECK(moment_delta(moments(rho), evolve_ip(s0, d, 1.0)) < 1e-10);
}

TEST_CASE("moments") {
  const OracleMoments v = moments(squeezed_density({}, 0.0, 20));
  CHECK(max_abs_diff(v.mean, PhaseVector{}) < 1e-15);
  CHECK(max_abs_diff(v.cov, Mat2::diag(0.5, 0.5)) < 1e-15);

  const OracleMoments c = moments(squeezed_density({1.0, 2.0}, 0.0, 60));
  CHECK(max_abs_diff(c.mean, PhaseVector{1.0, 2.0}) < 1e-12);
  CHECK(max_abs_diff(c.cov, Mat2::diag(0.5, 0.5)) < 1e-12);

  const OracleMoments s = moments(squeezed_density({}, 0.5, 60));
  CHECK(max_abs_diff(s.cov, Mat2::diag(0.5 * std::exp(-1.0), 0.5 * std::exp(1.0))) < 1e-10);
}

TEST_CASE("characteristic function") {
  const FockDensity rho = squeezed_density({1.0, -0.5}, kFigS, 60);
  CHECK(std::abs(characteristic(rho, 0.0, 0.0) - 1.0) < 1e-14);
  const GaussianState s = ideal_squeezed(0.0, kFigS);
  const GaussianState shifted{{1.0, -0.5}, s.cov};
  CHECK(std::abs(characteristic(rho, 0.7, -1.1) - characteristic_value(shifted, 0.7, -1.1)) < 1e-12);
}

TEST_CASE("Wigner reconstruction") {
  SUBCASE("vacuum") {
    const FockDensity rho = squeezed_density({}, 0.0, 30);
    const GridSpec grid = grid_around({}, Mat2::diag(0.5, 0.5), 65);
    const WignerField w = wigner_from_rho(rho, grid);
    double sup = 0.0;
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.np; ++j)
        sup = std::max(sup, std::abs(w.at(i, j) - wigner_value(vacuum(), {grid.x_at(i), grid.p_at(j)})));
    CHECK(sup < 1e-6);
    CHECK(std::abs(w.integral - 1.0) < 1e-5);
    CHECK(w.max_imag_residue <= 1e-9);
  }
  SUBCASE("squeezed and displaced") {
    const GaussianState s = ideal_squeezed(4.0, kFigS);
    const FockDensity rho = squeezed_density(s.mean, kFigS, 60);
    const GridSpec grid = grid_around(s.mean, s.cov.matrix(), 64);
    const WignerField w = wigner_from_rho(rho, grid);
    double sup = 0.0;
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.np; ++j)
        sup = std::max(sup, std::abs(w.at(i, j) - wigner_value(s, {grid.x_at(i), grid.p_at(j)})));
    CHECK(sup < 1e-6);
    CHECK(std::abs(w.integral - 1.0) < 1e-5);
  }
}

TEST_CASE("Wigner window checks") {
  const FockDensity rho = squeezed_density({4.0, 0.0}, kFigS, 60);
  GridSpec narrow;
  narrow.x_min = -2.0;
  narrow.x_max = 2.0;
  CHECK_THROWS_AS(wigner_from_rho(rho, narrow), WindowError);
  GridSpec coarse = grid_around({4.0, 0.0}, Mat2::diag(1.0, 0.25), 32);
  CHECK_THROWS_AS(wigner_from_rho(rho, coarse), WindowError);
}

TEST_CASE("tail guard") {
  CMatrix top = CMatrix::Zero(11, 11);
  top(10, 10) = 1.0;
  const FockDensity rho(top);
  CHECK(tail_population(rho) == doctest::Approx(1.0));
  CHECK_THROWS_AS(require_tail_below(rho), CutoffError);
  CHECK_NOTHROW(require_tail_below(squeezed_density({}, 0.0, 10)));

  // a drive that pushes the state off the top of the basis
  const DriveSpec d = DriveSpec::linear(1.0, LinearDrive{5.0, 1.0, -1.0, 2.0});
  const FockDensity rho0 = squeezed_density({}, 0.0, 30);
  CHECK_THROWS_AS(propagate(rho0, schrodinger_hamiltonian(d, 30), 1.0, 400), CutoffError);
}
