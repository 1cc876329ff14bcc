#pragma once

// Per-point bodies shared by the serial and OpenMP kernels.

#include <cmath>
#include <numbers>
#include <vector>

#include "qpic/kernels.hpp"

namespace qpic::kernels::detail {

/// Tr[rho D(alpha)] with <m|D|n> = sqrt(n!/m!) alpha^{m-n} e^{-|alpha|^2/2} L_n^{(m-n)}(|alpha|^2), m >= n.
inline cplx trace_rho_displacement(const Eigen::MatrixXcd& rho, int dim, std::span<const double> lgamma_table,
                                   cplx alpha, std::vector<double>& laguerre) {
  const double r = std::abs(alpha);
  if (r == 0.0) {
    return rho.topLeftCorner(dim, dim).trace();
  }
  const double x = r * r;
  const double log_r = std::log(r);
  const cplx unit = alpha / r;
  const cplx neg_conj_unit = -std::conj(unit);
  cplx phase_lower{1.0, 0.0};  // unit^k
  cplx phase_upper{1.0, 0.0};  // (-unit^*)^k
  cplx total{};
  for (int k = 0; k < dim; ++k) {
    const int len = dim - k;
    laguerre[0] = 1.0;
    if (len > 1) laguerre[1] = 1.0 + k - x;
    for (int n = 1; n + 1 < len; ++n) {
      laguerre[n + 1] = ((2.0 * n + 1.0 + k - x) * laguerre[n] - (n + k) * laguerre[n - 1]) / (n + 1);
    }
    double pre = std::exp(k * log_r - 0.5 * x - 0.5 * lgamma_table[k]);
    cplx lower{};  // sum over (m, n) = (n + k, n) of rho(n, m) D(m, n) without phase
    cplx upper{};
    for (int n = 0; n < len; ++n) {
      const int m = n + k;
      const double elem = pre * laguerre[n];
      lower += rho(n, m) * elem;
      if (k > 0) upper += rho(m, n) * elem;
      pre *= std::sqrt((n + 1.0) / (n + k + 1.0));
    }
    total += phase_lower * lower;
    if (k > 0) total += phase_upper * upper;
    phase_lower *= unit;
    phase_upper *= neg_conj_unit;
  }
  return total;
}

inline std::vector<double> lgamma_table(int dim) {
  std::vector<double> t(static_cast<std::size_t>(dim) + 1);
  for (int k = 0; k <= dim; ++k) t[static_cast<std::size_t>(k)] = std::lgamma(k + 1.0);
  return t;
}

/// chi = (-eta + i xi)/sqrt2
inline cplx chi_parameter(double xi, double eta) { return cplx(-eta, xi) / std::numbers::sqrt2; }

/// exp(-i * coord_k * freq_l) table, row k.
inline std::vector<cplx> phase_table(Axis coords, Axis freqs) {
  std::vector<cplx> t(static_cast<std::size_t>(coords.count) * freqs.count);
  for (int k = 0; k < coords.count; ++k) {
    for (int l = 0; l < freqs.count; ++l) {
      t[static_cast<std::size_t>(k) * freqs.count + l] = std::polar(1.0, -coords.at(k) * freqs.at(l));
    }
  }
  return t;
}

}  // namespace qpic::kernels::detail
