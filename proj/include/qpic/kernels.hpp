#pragma once

// Data-parallel inner loops. Every kernel exists twice with identical
// signatures: `serial` is the reference, `omp` is the OpenMP version the
// library calls. Per-point work is shared, so both produce bitwise-equal
// results.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "qpic/drive.hpp"
#include "qpic/gaussian_state.hpp"
#include "qpic/picture_engine.hpp"

namespace qpic::kernels {

using cplx = std::complex<double>;

/// Evenly spaced axis: start + i * step, i < count.
struct Axis {
  double start = 0.0;
  double step = 0.0;
  int count = 0;
  double at(int i) const { return start + step * i; }
};

/// Sampled characteristic function, values[i * eta.count + j] at (xi_i, eta_j).
struct CharacteristicGrid {
  Axis xi;
  Axis eta;
  std::vector<cplx> values;
};

/// Complex field on an (x, p) grid, values[i * p.count + j].
struct ComplexField {
  Axis x;
  Axis p;
  std::vector<cplx> values;
};

/// Real field on an (x, p) grid, values[i * p.count + j].
struct RealField {
  Axis x;
  Axis p;
  std::vector<double> values;
};

namespace serial {
/// Tr[rho D(chi)] on the lattice, using basis states below `dim_eff` only.
CharacteristicGrid characteristic_lattice(const Eigen::MatrixXcd& rho, int dim_eff, Axis xi, Axis eta);
/// (2pi)^-2 sum exp(-i(xi x + eta p)) chi dxi deta.
ComplexField fourier_to_wigner(const CharacteristicGrid& chi, Axis x, Axis p);
RealField gaussian_wigner_grid(const GaussianState& state, Axis x, Axis p);
std::vector<GaussianState> evolve_batch(const GaussianState& s0, const DriveSpec& d, PictureTag picture,
                                        std::span<const double> times);
}  // namespace serial

namespace omp {
CharacteristicGrid characteristic_lattice(const Eigen::MatrixXcd& rho, int dim_eff, Axis xi, Axis eta);
ComplexField fourier_to_wigner(const CharacteristicGrid& chi, Axis x, Axis p);
RealField gaussian_wigner_grid(const GaussianState& state, Axis x, Axis p);
std::vector<GaussianState> evolve_batch(const GaussianState& s0, const DriveSpec& d, PictureTag picture,
                                        std::span<const double> times);
}  // namespace omp

/// Threads OpenMP will use (1 when built without OpenMP).
int max_threads();

}  // namespace qpic::kernels
