#include "qpic/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kernels_detail.hpp"
#include "qpic/kernels.hpp"

namespace qpic::fock {

namespace {

const cplx I{0.0, 1.0};

bool all_finite(const CMatrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    if (!std::isfinite(m.data()[k].real()) || !std::isfinite(m.data()[k].imag())) return false;
  }
  return true;
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

CMatrix number_op(int cutoff) {
  CMatrix n = CMatrix::Zero(cutoff + 1, cutoff + 1);
  for (int k = 0; k <= cutoff; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

void require_cutoff(int cutoff, int min) {
  if (cutoff < min) {
    throw std::invalid_argument("cutoff " + std::to_string(cutoff) + " below minimum " + std::to_string(min));
  }
}

}  // namespace

FockOperator::FockOperator(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2) throw std::invalid_argument("FockOperator: need a square matrix, dim >= 2");
  if (!all_finite(m_)) throw std::domain_error("FockOperator: non-finite entry");
}

FockDensity::FockDensity(CMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 2) throw std::invalid_argument("FockDensity: need a square matrix, dim >= 2");
  if (!all_finite(rho_)) throw std::domain_error("FockDensity: non-finite entry");
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) throw std::domain_error("FockDensity: not Hermitian (" + std::to_string(herm) + ")");
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) throw std::domain_error("FockDensity: trace " + std::to_string(tr));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(rho_), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw std::domain_error("FockDensity: negative eigenvalue");
}

FockDensity FockDensity::unchecked(CMatrix rho) { return FockDensity(std::move(rho), Unchecked{}); }

double FockDensity::purity() const { return (rho_ * rho_).trace().real(); }

LadderOps ladder_ops(int cutoff) {
  require_cutoff(cutoff, 1);
  CMatrix a = CMatrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  CMatrix ad = a.adjoint();
  return {FockOperator(std::move(a)), FockOperator(std::move(ad))};
}

CMatrix position_op(int cutoff) {
  const LadderOps l = ladder_ops(cutoff);
  return (l.a.matrix() + l.ad.matrix()) / std::numbers::sqrt2;
}

CMatrix momentum_op(int cutoff) {
  const LadderOps l = ladder_ops(cutoff);
  return (l.a.matrix() - l.ad.matrix()) / (I * std::numbers::sqrt2);
}

CMatrix expm_hermitian(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(h));
  if (es.info() != Eigen::Success) throw std::runtime_error("expm_hermitian: eigensolver failed");
  const Eigen::VectorXd& w = es.eigenvalues();
  CVector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -w(k) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

FockOperator displacement_op(cplx alpha, int cutoff) {
  require_cutoff(cutoff, 1);
  if (std::norm(alpha) > cutoff / 4.0) {
    std::ostringstream msg;
    msg << "displacement |alpha|^2 = " << std::norm(alpha) << " exceeds cutoff/4 = " << cutoff / 4.0;
    throw CutoffError(msg.str(), std::exp(-std::norm(alpha)));
  }
  const LadderOps l = ladder_ops(cutoff);
  // exp(G) with G anti-Hermitian equals exp(-i H) for H = i G.
  const CMatrix g = alpha * l.ad.matrix() - std::conj(alpha) * l.a.matrix();
  return FockOperator(expm_hermitian(I * g, 1.0));
}

FockOperator squeeze_op(cplx zeta, int cutoff) {
  require_cutoff(cutoff, 1);
  if (std::abs(zeta) > 1.5) throw CutoffError("squeeze |zeta| exceeds 1.5", 0.0);
  if (zeta != cplx{} && cutoff < 60) throw CutoffError("squeeze needs cutoff >= 60", 0.0);
  const LadderOps l = ladder_ops(cutoff);
  const CMatrix a2 = l.a.matrix() * l.a.matrix();
  const CMatrix ad2 = l.ad.matrix() * l.ad.matrix();
  const CMatrix g = 0.5 * (std::conj(zeta) * a2 - zeta * ad2);
  return FockOperator(expm_hermitian(I * g, 1.0));
}

Su11Ops su11_ops(int cutoff) {
  require_cutoff(cutoff, 3);
  const LadderOps l = ladder_ops(cutoff);
  CMatrix k0 = 0.5 * (number_op(cutoff) + 0.5 * CMatrix::Identity(cutoff + 1, cutoff + 1));
  CMatrix kp = 0.5 * l.ad.matrix() * l.ad.matrix();
  CMatrix km = 0.5 * l.a.matrix() * l.a.matrix();
  return {FockOperator(std::move(k0)), FockOperator(std::move(kp)), FockOperator(std::move(km))};
}

CMatrix displacement_elements(cplx alpha, int cutoff) {
  require_cutoff(cutoff, 1);
  const int dim = cutoff + 1;
  CMatrix d = CMatrix::Zero(dim, dim);
  const double x = std::norm(alpha);
  const double r = std::abs(alpha);
  if (r == 0.0) return CMatrix::Identity(dim, dim);
  const cplx unit = alpha / r;
  const std::vector<double> lg = kernels::detail::lgamma_table(dim);
  std::vector<double> lag(static_cast<std::size_t>(dim) + 1);
  cplx phase_lower{1.0, 0.0};
  cplx phase_upper{1.0, 0.0};
  for (int k = 0; k < dim; ++k) {
    const int len = dim - k;
    lag[0] = 1.0;
    if (len > 1) lag[1] = 1.0 + k - x;
    for (int n = 1; n + 1 < len; ++n) lag[n + 1] = ((2.0 * n + 1.0 + k - x) * lag[n] - (n + k) * lag[n - 1]) / (n + 1);
    double pre = std::exp(k * std::log(r) - 0.5 * x - 0.5 * lg[k]);
    for (int n = 0; n < len; ++n) {
      const double elem = pre * lag[n];
      d(n + k, n) = phase_lower * elem;
      if (k > 0) d(n, n + k) = phase_upper * elem;
      pre *= std::sqrt((n + 1.0) / (n + k + 1.0));
    }
    phase_lower *= unit;
    phase_upper *= -std::conj(unit);
  }
  return d;
}

CMatrix quadratic_hamiltonian_su11(const DriveSpec& d, int cutoff, double t) {
  const Su11Ops k = su11_ops(cutoff);
  const double kappa = d.quadratic_drive().kappa;
  const cplx e = std::polar(1.0, 2.0 * d.omega0 * t);
  return 2.0 * d.omega0 * k.k0.matrix() + I * kappa * (e * k.km.matrix() - std::conj(e) * k.kp.matrix());
}

CMatrix quadratic_hamiltonian_ladder(const DriveSpec& d, int cutoff, double t) {
  const LadderOps l = ladder_ops(cutoff);
  const double kappa = d.quadratic_drive().kappa;
  const cplx e = std::polar(1.0, 2.0 * d.omega0 * t);
  const CMatrix a2 = l.a.matrix() * l.a.matrix();
  const CMatrix ad2 = l.ad.matrix() * l.ad.matrix();
  const CMatrix h0 = d.omega0 * (number_op(cutoff) + 0.5 * CMatrix::Identity(cutoff + 1, cutoff + 1));
  return h0 + I * (kappa / 2.0) * (e * a2 - std::conj(e) * ad2);
}

Hamiltonian schrodinger_hamiltonian(const DriveSpec& d, int cutoff) {
  d.validate();
  require_cutoff(cutoff, 3);
  const CMatrix h0 = d.omega0 * (number_op(cutoff) + 0.5 * CMatrix::Identity(cutoff + 1, cutoff + 1));
  switch (d.drive_kind()) {
    case DriveKind::free:
      return {cutoff, [h0](double) { return h0; }, true};
    case DriveKind::linear: {
      const LinearDrive& ld = d.linear_drive();
      const LadderOps l = ladder_ops(cutoff);
      const cplx alpha = ld.alpha();
      CMatrix a = l.a.matrix();
      CMatrix ad = l.ad.matrix();
      return {cutoff,
              [h0, a, ad, alpha, ld](double t) {
                const cplx e = std::polar(1.0, -ld.omega1 * t);
                return CMatrix(h0 + ld.g * (e * alpha * a + std::conj(e * alpha) * ad));
              },
              ld.g == 0.0};
    }
    case DriveKind::quadratic: {
      const Su11Ops k = su11_ops(cutoff);
      const double kappa = d.quadratic_drive().kappa;
      const double w0 = d.omega0;
      CMatrix k0 = k.k0.matrix();
      CMatrix kp = k.kp.matrix();
      CMatrix km = k.km.matrix();
      return {cutoff,
              [k0, kp, km, kappa, w0](double t) {
                const cplx e = std::polar(1.0, 2.0 * w0 * t);
                return CMatrix(2.0 * w0 * k0 + I * kappa * (e * km - std::conj(e) * kp));
              },
              kappa == 0.0};
    }
  }
  throw std::logic_error("unknown drive kind");
}

Hamiltonian interaction_hamiltonian(const DriveSpec& d, int cutoff) {
  d.validate();
  require_cutoff(cutoff, 3);
  const int dim = cutoff + 1;
  switch (d.drive_kind()) {
    case DriveKind::free:
      return {cutoff, [dim](double) { return CMatrix(CMatrix::Zero(dim, dim)); }, true};
    case DriveKind::linear: {
      const LinearDrive& ld = d.linear_drive();
      const double big_omega = d.big_omega();
      const LadderOps l = ladder_ops(cutoff);
      const cplx alpha = ld.alpha();
      CMatrix a = l.a.matrix();
      CMatrix ad = l.ad.matrix();
      return {cutoff,
              [a, ad, alpha, ld, big_omega](double t) {
                const cplx e = std::polar(1.0, -big_omega * t);
                return CMatrix(ld.g * (e * alpha * a + std::conj(e * alpha) * ad));
              },
              ld.g == 0.0 || big_omega == 0.0};
    }
    case DriveKind::quadratic: {
      const Su11Ops k = su11_ops(cutoff);
      const CMatrix v = I * d.quadratic_drive().kappa * (k.km.matrix() - k.kp.matrix());
      return {cutoff, [v](double) { return v; }, true};
    }
  }
  throw std::logic_error("unknown drive kind");
}

int default_steps(const DriveSpec& d, double t) {
  double rate = d.omega0;
  if (d.drive_kind() == DriveKind::linear) rate = std::max(rate, std::abs(d.big_omega()));
  if (d.drive_kind() == DriveKind::quadratic) rate = std::max(rate, std::abs(d.quadratic_drive().kappa));
  const double n = std::ceil(2000.0 * std::abs(t) * rate / (2.0 * std::numbers::pi));
  return std::max(500, static_cast<int>(n));
}

CMatrix propagator(const Hamiltonian& h, double t0, double t1, int steps) {
  if (steps < 1) throw std::invalid_argument("propagator: steps must be >= 1");
  if (h.time_independent) return expm_hermitian(h.at(t0), t1 - t0);
  const double dt = (t1 - t0) / steps;
  CMatrix u = CMatrix::Identity(h.cutoff + 1, h.cutoff + 1);
  for (int k = 0; k < steps; ++k) {
    const double mid = t0 + (k + 0.5) * dt;
    u = expm_hermitian(h.at(mid), dt) * u;
  }
  return u;
}

namespace {

FockDensity checked_evolved(const CMatrix& rho, double t) {
  const double drift = std::abs(rho.trace().real() - 1.0);
  const FockDensity probe = FockDensity::unchecked(rho);
  const double tail = tail_population(probe);
  if (drift > 1e-6 || tail > 1e-8) {
    std::ostringstream msg;
    msg << "cutoff " << probe.cutoff() << " too small at t=" << t << ": tail mass " << tail << ", trace drift "
        << drift;
    throw CutoffError(msg.str(), tail);
  }
  return FockDensity(hermitian_part(rho));
}

}  // namespace

FockDensity propagate(const FockDensity& rho0, const Hamiltonian& h, double t, int steps) {
  if (rho0.cutoff() != h.cutoff) throw std::invalid_argument("propagate: cutoff mismatch");
  const CMatrix u = propagator(h, 0.0, t, steps);
  return checked_evolved(u * rho0.matrix() * u.adjoint(), t);
}

std::vector<FockDensity> propagate_through(const FockDensity& rho0, const Hamiltonian& h,
                                           const std::vector<double>& times, int steps, int refine) {
  if (rho0.cutoff() != h.cutoff) throw std::invalid_argument("propagate_through: cutoff mismatch");
  if (steps < 1 || refine < 1) throw std::invalid_argument("propagate_through: steps and refine must be >= 1");
  std::vector<FockDensity> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  const double span = times.back();
  const double dt = span > 0.0 ? span / steps : 1.0;
  CMatrix rho = rho0.matrix();
  double now = 0.0;
  for (double t : times) {
    if (t < now) throw std::invalid_argument("propagate_through: times must be ascending and >= 0");
    if (t > now) {
      const int n = std::max(1, static_cast<int>(std::ceil((t - now) / dt - 1e-9)));
      const CMatrix u = propagator(h, now, t, n * refine);
      rho = u * rho * u.adjoint();
      now = t;
    }
    out.push_back(checked_evolved(rho, t));
  }
  return out;
}

FockDensity richardson(const FockDensity& coarse, const FockDensity& fine) {
  return FockDensity::unchecked((4.0 * fine.matrix() - coarse.matrix()) / 3.0);
}

FockDensity squeezed_density(PhaseVector mean, double s, int cutoff) {
  require_cutoff(cutoff, 1);
  const int dim = cutoff + 1;
  // S(s)|0> has support on even levels with amplitudes
  // (-tanh s)^n sqrt((2n)!) / (2^n n! sqrt(cosh s)).
  CVector psi = CVector::Zero(dim);
  const double th = std::tanh(s);
  for (int n = 0; 2 * n < dim; ++n) {
    double log_mag = 0.5 * std::lgamma(2.0 * n + 1.0) - n * std::numbers::ln2 - std::lgamma(n + 1.0) -
                     0.5 * std::log(std::cosh(s));
    if (n > 0) {
      if (th == 0.0) break;
      log_mag += n * std::log(std::abs(th));
    }
    const double sign = (th > 0.0 && n % 2 == 1) ? -1.0 : 1.0;
    psi(2 * n) = sign * std::exp(log_mag);
  }
  const cplx alpha = cplx(mean.x, mean.p) / std::numbers::sqrt2;
  psi = displacement_elements(alpha, cutoff) * psi;
  const double tail = psi.tail(std::min(5, dim)).squaredNorm();
  if (tail > 1e-8 || std::abs(psi.squaredNorm() - 1.0) > 1e-8) {
    throw CutoffError("cutoff " + std::to_string(cutoff) + " too small for the requested state", tail);
  }
  psi.normalize();
  CMatrix rho = psi * psi.adjoint();
  return FockDensity(hermitian_part(rho));
}

OracleMoments moments(const FockDensity& rho) {
  const CMatrix x = position_op(rho.cutoff());
  const CMatrix p = momentum_op(rho.cutoff());
  const CMatrix& r = rho.matrix();
  const double mx = (r * x).trace().real();
  const double mp = (r * p).trace().real();
  const double xx = (r * x * x).trace().real() - mx * mx;
  const double pp = (r * p * p).trace().real() - mp * mp;
  const double xp = 0.5 * (r * (x * p + p * x)).trace().real() - mx * mp;
  return {{mx, mp}, {xx, xp, xp, pp}};
}

double tail_population(const FockDensity& rho, int levels) {
  const int dim = rho.dim();
  const int n = std::min(levels, dim);
  double sum = 0.0;
  for (int k = dim - n; k < dim; ++k) sum += rho.matrix()(k, k).real();
  return sum;
}

void require_tail_below(const FockDensity& rho, double limit) {
  const double tail = tail_population(rho);
  if (tail > limit) {
    std::ostringstream msg;
    msg << "top-level population " << tail << " exceeds " << limit << " at cutoff " << rho.cutoff();
    throw CutoffError(msg.str(), tail);
  }
}

cplx characteristic(const FockDensity& rho, double xi, double eta) {
  const std::vector<double> lg = kernels::detail::lgamma_table(rho.dim());
  std::vector<double> scratch(static_cast<std::size_t>(rho.dim()) + 1);
  return kernels::detail::trace_rho_displacement(rho.matrix(), rho.dim(), lg, kernels::detail::chi_parameter(xi, eta),
                                                 scratch);
}

GridSpec grid_around(PhaseVector mean, const Mat2& cov, int n, double sigmas) {
  const double sx = std::sqrt(cov.xx);
  const double sp = std::sqrt(cov.pp);
  return {mean.x - sigmas * sx, mean.x + sigmas * sx, mean.p - sigmas * sp, mean.p + sigmas * sp, n, n};
}

Lattice lattice_for(const OracleMoments& m, const GridSpec& grid) {
  const double tr = m.cov.xx + m.cov.pp;
  const double disc = std::sqrt(std::max(0.0, 0.25 * (m.cov.xx - m.cov.pp) * (m.cov.xx - m.cov.pp) + m.cov.xp * m.cov.xp));
  const double lam_max = 0.5 * tr + disc;
  const double lam_min = (m.cov.xx * m.cov.pp - m.cov.xp * m.cov.xp) / lam_max;
  if (!(lam_min > 0.0)) throw std::domain_error("lattice_for: covariance is not positive-definite");
  // |chi| = exp(-k^T Sigma k / 2) falls below e^{-30} beyond this radius.
  const double half_width = std::sqrt(60.0 / lam_min);
  // Replicas of W sit one period apart; keep them 8 sigma clear of every grid point.
  const double reach = std::max({std::abs(grid.x_min), std::abs(grid.x_max), std::abs(grid.p_min), std::abs(grid.p_max),
                                 std::abs(m.mean.x), std::abs(m.mean.p)});
  const double period = 2.0 * (reach + 8.0 * std::sqrt(lam_max));
  const double step = 2.0 * std::numbers::pi / period;
  return {step, static_cast<int>(std::ceil(half_width / step))};
}

WignerField wigner_from_rho(const FockDensity& rho, const GridSpec& grid) {
  if (grid.nx < 64 || grid.np < 64) throw WindowError("wigner_from_rho: need at least 64 samples per axis");
  const OracleMoments m = moments(rho);
  const double sx = std::sqrt(m.cov.xx);
  const double sp = std::sqrt(m.cov.pp);
  if (grid.x_min > m.mean.x - 6.0 * sx || grid.x_max < m.mean.x + 6.0 * sx || grid.p_min > m.mean.p - 6.0 * sp ||
      grid.p_max < m.mean.p + 6.0 * sp) {
    std::ostringstream msg;
    msg << "wigner_from_rho: window misses mean +- 6 sigma (mean " << m.mean.x << ", " << m.mean.p << "; sigma " << sx
        << ", " << sp << ")";
    throw WindowError(msg.str());
  }

  int dim_eff = rho.dim();
  while (dim_eff > 1 && std::abs(rho.matrix()(dim_eff - 1, dim_eff - 1)) <= 1e-22) --dim_eff;

  const Lattice lat = lattice_for(m, grid);
  const kernels::Axis freq{-lat.half_count * lat.step, lat.step, lat.count()};
  const kernels::Axis xa{grid.x_min, (grid.x_max - grid.x_min) / (grid.nx - 1), grid.nx};
  const kernels::Axis pa{grid.p_min, (grid.p_max - grid.p_min) / (grid.np - 1), grid.np};

  const kernels::CharacteristicGrid chi = kernels::omp::characteristic_lattice(rho.matrix(), dim_eff, freq, freq);
  const kernels::ComplexField field = kernels::omp::fourier_to_wigner(chi, xa, pa);

  WignerField out;
  out.grid = grid;
  out.lattice = lat;
  out.values.resize(field.values.size());
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    out.values[k] = field.values[k].real();
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(field.values[k].imag()));
  }
  if (out.max_imag_residue > 1e-9) {
    throw std::runtime_error("wigner_from_rho: imaginary residue " + std::to_string(out.max_imag_residue));
  }
  double sum = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    const double wi = (i == 0 || i == grid.nx - 1) ? 0.5 : 1.0;
    for (int j = 0; j < grid.np; ++j) {
      const double wj = (j == 0 || j == grid.np - 1) ? 0.5 : 1.0;
      sum += wi * wj * out.at(i, j);
    }
  }
  out.integral = sum * xa.step * pa.step;
  return out;
}

}  // namespace qpic::fock
