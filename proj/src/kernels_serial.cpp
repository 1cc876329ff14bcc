#include <cmath>
#include <numbers>

#include "kernels_detail.hpp"

namespace qpic::kernels::serial {

CharacteristicGrid characteristic_lattice(const Eigen::MatrixXcd& rho, int dim_eff, Axis xi, Axis eta) {
  CharacteristicGrid out{xi, eta, std::vector<cplx>(static_cast<std::size_t>(xi.count) * eta.count)};
  const std::vector<double> lg = detail::lgamma_table(dim_eff);
  const int total = xi.count * eta.count;
  std::vector<double> laguerre(static_cast<std::size_t>(dim_eff) + 1);
  for (int idx = 0; idx < total; ++idx) {
    const int i = idx / eta.count;
    const int j = idx % eta.count;
    out.values[static_cast<std::size_t>(idx)] =
        detail::trace_rho_displacement(rho, dim_eff, lg, detail::chi_parameter(xi.at(i), eta.at(j)), laguerre);
  }
  return out;
}

ComplexField fourier_to_wigner(const CharacteristicGrid& chi, Axis x, Axis p) {
  const std::vector<cplx> p_phase = detail::phase_table(p, chi.eta);
  const std::vector<cplx> x_phase = detail::phase_table(x, chi.xi);
  const int n_xi = chi.xi.count;
  const int n_eta = chi.eta.count;
  // partial[i * p.count + j] = sum_l exp(-i eta_l p_j) chi(xi_i, eta_l)
  std::vector<cplx> partial(static_cast<std::size_t>(n_xi) * p.count);
  for (int i = 0; i < n_xi; ++i) {
    for (int j = 0; j < p.count; ++j) {
      cplx acc{};
      for (int l = 0; l < n_eta; ++l) {
        acc += p_phase[static_cast<std::size_t>(j) * n_eta + l] * chi.values[static_cast<std::size_t>(i) * n_eta + l];
      }
      partial[static_cast<std::size_t>(i) * p.count + j] = acc;
    }
  }
  const double scale = chi.xi.step * chi.eta.step / (4.0 * std::numbers::pi * std::numbers::pi);
  ComplexField out{x, p, std::vector<cplx>(static_cast<std::size_t>(x.count) * p.count)};
  for (int k = 0; k < x.count; ++k) {
    for (int j = 0; j < p.count; ++j) {
      cplx acc{};
      for (int i = 0; i < n_xi; ++i) {
        acc += x_phase[static_cast<std::size_t>(k) * n_xi + i] * partial[static_cast<std::size_t>(i) * p.count + j];
      }
      out.values[static_cast<std::size_t>(k) * p.count + j] = scale * acc;
    }
  }
  return out;
}

RealField gaussian_wigner_grid(const GaussianState& state, Axis x, Axis p) {
  RealField out{x, p, std::vector<double>(static_cast<std::size_t>(x.count) * p.count)};
  for (int i = 0; i < x.count; ++i) {
    for (int j = 0; j < p.count; ++j) {
      out.values[static_cast<std::size_t>(i) * p.count + j] = wigner_value(state, {x.at(i), p.at(j)});
    }
  }
  return out;
}

std::vector<GaussianState> evolve_batch(const GaussianState& s0, const DriveSpec& d, PictureTag picture,
                                        std::span<const double> times) {
  std::vector<GaussianState> out(times.size(), s0);
  const auto n = static_cast<std::ptrdiff_t>(times.size());
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = evolve(s0, d, picture, times[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace qpic::kernels::serial
