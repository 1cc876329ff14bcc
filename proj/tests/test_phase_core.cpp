#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qpic/phase_core.hpp"

using namespace qpic;
using std::numbers::pi;

TEST_CASE("rotation matrix basics") {
  CHECK(max_abs_diff(rotation_matrix(0.0), Mat2::identity()) == 0.0);

  const PhaseVector q = rotation_matrix(pi / 2) * PhaseVector{1.0, 0.0};
  CHECK(std::abs(q.x) < 1e-15);
  CHECK(std::abs(q.p - 1.0) < 1e-15);

  CHECK(max_abs_diff(rotation_matrix(0.3) * rotation_matrix(0.7), rotation_matrix(1.0)) < 1e-12);
}

TEST_CASE("apply_affine") {
  const PhaseVector r = apply_affine(Mat2::identity(), {}, {2.0, 3.0});
  CHECK(r == PhaseVector{2.0, 3.0});

  const PhaseVector flipped = apply_affine(rotation_matrix(pi), {}, {1.0, 0.0});
  CHECK(max_abs_diff(flipped, {-1.0, 0.0}) < 1e-15);

  // [[0, 1], [-1, 0]] (4, 0) = (0, -4)
  const PhaseVector quarter = apply_affine(rotation_matrix(-pi / 2), {}, {4.0, 0.0});
  CHECK(max_abs_diff(quarter, {0.0, -4.0}) < 1e-12);

  const PhaseVector shifted = apply_affine(Mat2::identity(), {0.5, -1.0}, {2.0, 3.0});
  CHECK(shifted == PhaseVector{2.5, 2.0});
}

TEST_CASE("conjugate") {
  const Mat2 a = Mat2::diag(1.0, 4.0);
  CHECK(conjugate(Mat2::identity(), a) == a);
  CHECK(max_abs_diff(conjugate(rotation_matrix(-pi / 2), a), Mat2::diag(4.0, 1.0)) < 1e-12);

  const Mat2 b{2.0, 0.3, 0.3, 0.7};
  CHECK(std::abs(det(conjugate(rotation_matrix(0.7), b)) - det(b)) < 1e-12);
}

TEST_CASE("property: rotations are orthogonal with unit determinant") {
  for (int k = 0; k <= 400; ++k) {
    const double theta = -4 * pi + 8 * pi * k / 400.0;
    const Mat2 r = rotation_matrix(theta);
    CHECK(std::abs(det(r) - 1.0) < 1e-12);
    CHECK(max_abs_diff(r * transpose(r), Mat2::identity()) < 1e-12);
    CHECK(max_abs_diff(rotation_matrix(-theta), transpose(r)) < 1e-12);
  }
}

TEST_CASE("property: conjugation by a rotation keeps symmetry, definiteness and determinant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    // A = L L^T + eps I is SPD
    const Mat2 l{u(rng), 0.0, u(rng), u(rng)};
    const Mat2 a = l * transpose(l) + 0.05 * Mat2::identity();
    const double theta = 4 * pi * u(rng);
    const Mat2 c = conjugate(rotation_matrix(theta), a);
    CHECK(std::abs(c.xp - c.px) < 1e-12);
    CHECK(c.xx > 0.0);
    CHECK(det(c) > 0.0);
    CHECK(std::abs(det(c) - det(a)) < 1e-12);
  }
}

TEST_CASE("identity_minus_rotation agrees with I - R") {
  for (double theta : {0.0, 1e-9, 0.3, 2.0, pi, 5.5}) {
    CHECK(max_abs_diff(identity_minus_rotation(theta), Mat2::identity() - rotation_matrix(theta)) < 1e-15);
  }
}

TEST_CASE("symplectic maps compose and invert") {
  const SymplecticMap a = SymplecticMap::rotation(0.4);
  const SymplecticMap b = SymplecticMap::displacement({1.0, -2.0});
  const SymplecticMap c = SymplecticMap::squeeze(0.3);
  const SymplecticMap abc = compose(a, compose(b, c));
  const PhaseVector r{0.7, -1.1};
  CHECK(max_abs_diff(abc.apply(r), a.apply(b.apply(c.apply(r)))) < 1e-14);
  CHECK(max_abs_diff(inverse(abc).apply(abc.apply(r)), r) < 1e-14);
  CHECK(std::abs(det(c.linear) - 1.0) < 1e-15);
}

TEST_CASE("inverse of a singular matrix throws") {
  CHECK_THROWS_AS(inverse(Mat2{1.0, 2.0, 2.0, 4.0}), std::domain_error);
}
