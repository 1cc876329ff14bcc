#pragma once

// Brute-force reference: dense density matrices in a truncated number basis
// {|0>, ..., |N>}, midpoint-rule time stepping in the Schrodinger picture, and
// Wigner reconstruction from the symmetric characteristic function.

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qpic/drive.hpp"
#include "qpic/gaussian_state.hpp"

namespace qpic::fock {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Truncation too small for the requested state or dynamics.
class CutoffError : public std::runtime_error {
 public:
  CutoffError(const std::string& what, double tail_mass) : std::runtime_error(what), tail_mass_(tail_mass) {}
  double tail_mass() const { return tail_mass_; }

 private:
  double tail_mass_;
};

/// Sampling window does not cover the state.
class WindowError : public std::domain_error {
 public:
  explicit WindowError(const std::string& what) : std::domain_error(what) {}
};

/// Dense operator on the (N+1)-dimensional truncated space.
class FockOperator {
 public:
  explicit FockOperator(CMatrix m);
  const CMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  int cutoff() const { return dim() - 1; }

 private:
  CMatrix m_;
};

/// Density matrix. Construction checks Hermiticity (1e-12), unit trace (1e-8)
/// and positivity (eigenvalues >= -1e-10).
class FockDensity {
 public:
  explicit FockDensity(CMatrix rho);
  /// Skips validation; used for extrapolated combinations of valid states.
  static FockDensity unchecked(CMatrix rho);

  const CMatrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  int cutoff() const { return dim() - 1; }
  double trace() const { return rho_.trace().real(); }
  double purity() const;

 private:
  struct Unchecked {};
  FockDensity(CMatrix rho, Unchecked) : rho_(std::move(rho)) {}
  CMatrix rho_;
};

struct LadderOps {
  FockOperator a;
  FockOperator ad;
};

/// Annihilation/creation with sqrt(n) on the first super/sub-diagonal. N >= 1.
LadderOps ladder_ops(int cutoff);

/// Quadratures x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2).
CMatrix position_op(int cutoff);
CMatrix momentum_op(int cutoff);

/// exp(-i H t) for Hermitian H via unitary diagonalisation.
CMatrix expm_hermitian(const CMatrix& h, double t);

/// exp(alpha a^dag - alpha^* a) on the truncated space. Requires |alpha|^2 <= N/4.
FockOperator displacement_op(cplx alpha, int cutoff);

/// exp((zeta^* a^2 - zeta a^dag^2)/2). Requires |zeta| <= 1.5 and N >= 60 for zeta != 0.
FockOperator squeeze_op(cplx zeta, int cutoff);

/// SU(1,1) generators K0 = (a^dag a + 1/2)/2, K+ = a^dag^2/2, K- = a^2/2. N >= 3.
struct Su11Ops {
  FockOperator k0;
  FockOperator kp;
  FockOperator km;
};
Su11Ops su11_ops(int cutoff);

/// Exact truncation of the infinite-space displacement: <m|D(alpha)|n> for m,n <= N
/// from the associated-Laguerre closed form.
CMatrix displacement_elements(cplx alpha, int cutoff);

/// Hamiltonian H(t) on the truncated space.
struct Hamiltonian {
  int cutoff = 0;
  std::function<CMatrix(double)> at;
  bool time_independent = false;
};

/// Schrodinger-picture Hamiltonian H0 + V(t) for the drive. The quadratic drive
/// uses the SU(1,1) form.
Hamiltonian schrodinger_hamiltonian(const DriveSpec& d, int cutoff);

/// Interaction-picture potential V_I(t) (zero for the free drive).
Hamiltonian interaction_hamiltonian(const DriveSpec& d, int cutoff);

/// 2 w0 K0 + i kappa (e^{2 i w0 t} K- - e^{-2 i w0 t} K+)
CMatrix quadratic_hamiltonian_su11(const DriveSpec& d, int cutoff, double t);
/// w0 (a^dag a + 1/2) + i (kappa/2) (e^{2 i w0 t} a^2 - e^{-2 i w0 t} a^dag^2)
CMatrix quadratic_hamiltonian_ladder(const DriveSpec& d, int cutoff, double t);

/// Default midpoint step count over [0, t]:
/// ceil(2000 t max(w0, |Omega|, kappa) / 2pi), at least 500.
int default_steps(const DriveSpec& d, double t);

/// Time-ordered product of midpoint step unitaries over [t0, t1].
CMatrix propagator(const Hamiltonian& h, double t0, double t1, int steps);

/// rho(t) = U rho0 U^dag with U = propagator(h, 0, t, steps). Throws CutoffError
/// when the top five levels hold more than 1e-8 or the trace drifts beyond 1e-6.
FockDensity propagate(const FockDensity& rho0, const Hamiltonian& h, double t, int steps);

/// States at each of `times` (ascending, >= 0), stepping continuously with
/// about `steps` midpoint steps over [0, times.back()]. Each interval's step
/// count is multiplied by `refine`, so refine = 2 halves every step exactly.
std::vector<FockDensity> propagate_through(const FockDensity& rho0, const Hamiltonian& h,
                                           const std::vector<double>& times, int steps, int refine = 1);

/// (4 fine - coarse) / 3 for a second-order, time-symmetric integrator.
FockDensity richardson(const FockDensity& coarse, const FockDensity& fine);

/// |psi><psi| for D(alpha) S(s)|0> with alpha = (mean.x + i mean.p)/sqrt2.
FockDensity squeezed_density(PhaseVector mean, double s, int cutoff);

struct OracleMoments {
  PhaseVector mean;
  Mat2 cov;  ///< symmetrised second moments
};

OracleMoments moments(const FockDensity& rho);

/// Population of the highest `levels` basis states.
double tail_population(const FockDensity& rho, int levels = 5);

/// Throws CutoffError when tail_population exceeds `limit`.
void require_tail_below(const FockDensity& rho, double limit = 1e-8);

/// Tr[rho D(chi)], chi = (-eta + i xi)/sqrt2.
cplx characteristic(const FockDensity& rho, double xi, double eta);

struct GridSpec {
  double x_min = -8.0;
  double x_max = 8.0;
  double p_min = -8.0;
  double p_max = 8.0;
  int nx = 64;
  int np = 64;

  double x_at(int i) const { return x_min + (x_max - x_min) * i / (nx - 1); }
  double p_at(int j) const { return p_min + (p_max - p_min) * j / (np - 1); }
};

/// Window mean +- `sigmas` standard deviations along each axis.
GridSpec grid_around(PhaseVector mean, const Mat2& cov, int n = 64, double sigmas = 6.5);

/// Uniform symmetric lattice for the characteristic function.
struct Lattice {
  double step = 0.0;
  int half_count = 0;  ///< points at k * step, k = -half_count..half_count
  int count() const { return 2 * half_count + 1; }
  double at(int i) const { return (i - half_count) * step; }
};

struct WignerField {
  GridSpec grid;
  std::vector<double> values;  ///< values[ix * np + ip]
  double max_imag_residue = 0.0;
  double integral = 0.0;  ///< trapezoidal integral over the window
  Lattice lattice;

  double at(int ix, int ip) const { return values[static_cast<std::size_t>(ix) * grid.np + ip]; }
};

/// Lattice resolving the characteristic function of `rho` down to e^{-30} and
/// free of aliasing over `grid`.
Lattice lattice_for(const OracleMoments& m, const GridSpec& grid);

/// W(x,p) = (2pi)^-2 sum exp(-i(xi x + eta p)) Tr[rho D(chi)] dxi deta on the lattice.
/// Throws WindowError if the grid misses mean +- 6 sigma or has fewer than 64
/// samples per axis, and std::runtime_error if the imaginary residue exceeds 1e-9.
WignerField wigner_from_rho(const FockDensity& rho, const GridSpec& grid);

}  // namespace qpic::fock
