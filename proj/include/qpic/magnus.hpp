#pragma once

// Magnus series for the linearly driven oscillator in the interaction
// picture. V_I(t) is linear in a and a^dag, so [V_I(t1), V_I(t2)] is a
// multiple of the identity and the series stops after the second term.

#include <complex>

#include "qpic/drive.hpp"
#include "qpic/phase_core.hpp"

namespace qpic {

using cplx = std::complex<double>;

/// c_a a + c_ad a^dag + c_id 1, with [a, a^dag] = 1.
struct LinearOperatorForm {
  cplx c_a{};
  cplx c_ad{};
  cplx c_id{};

  LinearOperatorForm& operator+=(const LinearOperatorForm& o) {
    c_a += o.c_a;
    c_ad += o.c_ad;
    c_id += o.c_id;
    return *this;
  }
  friend LinearOperatorForm operator+(LinearOperatorForm l, const LinearOperatorForm& r) { return l += r; }
  friend LinearOperatorForm operator*(cplx s, const LinearOperatorForm& f) {
    return {s * f.c_a, s * f.c_ad, s * f.c_id};
  }
  friend LinearOperatorForm operator*(double s, const LinearOperatorForm& f) { return cplx(s) * f; }

  /// |c_a| + |c_ad| + |c_id|
  double norm() const { return std::abs(c_a) + std::abs(c_ad) + std::abs(c_id); }
};

/// [F, G]; always a pure identity term.
LinearOperatorForm commutator(const LinearOperatorForm& f, const LinearOperatorForm& g);

struct MagnusTerms {
  cplx beta{};          ///< e^{-i A1} = D(beta)
  double phi = 0.0;     ///< scalar A2
  double a3_norm = 0.0; ///< operator-form norm of A3
};

/// Interaction-picture potential g (e^{-i Omega t} alpha a + e^{i Omega t} alpha^* a^dag).
LinearOperatorForm vi_at(const DriveSpec& d, double t);

/// beta(t) = (g/Omega) alpha^* (1 - e^{i Omega t}). Throws ResonanceError at Omega = 0.
cplx magnus_a1_analytic(const DriveSpec& d, double t);

/// A2(t) = (g^2 |alpha|^2 / Omega^2)(Omega t - sin Omega t), with the commutator
/// ordering [V(t1), V(t2)], t1 < t2, of the series as written.
double magnus_a2_analytic(const DriveSpec& d, double t);

struct QuadratureOptions {
  int nodes_a1 = 64;
  int nodes_a2 = 64;
  int nodes_a3 = 16;
};

/// Quadrature of V_I over [0, t], returned as the displacement parameter.
cplx magnus_a1_numeric(const DriveSpec& d, double t, const QuadratureOptions& q = {});
/// Full A1 operator form from quadrature.
LinearOperatorForm magnus_a1_form_numeric(const DriveSpec& d, double t, const QuadratureOptions& q = {});
double magnus_a2_numeric(const DriveSpec& d, double t, const QuadratureOptions& q = {});
double magnus_a3_numeric(const DriveSpec& d, double t, const QuadratureOptions& q = {});
MagnusTerms magnus_terms_numeric(const DriveSpec& d, double t, const QuadratureOptions& q = {});

/// Interaction-picture propagator U_I(t) = e^{-i phase} D(displacement)
///                                       = e^{-i split_phase} D(nu) D(g alpha^*/Omega).
struct IpUnitary {
  double phase = 0.0;
  cplx displacement{};
  double split_phase = 0.0;
  cplx nu{};
  cplx fixed{};  ///< g alpha^* / Omega
};

/// The phase never enters a GaussianState; it is reported for completeness.
IpUnitary unitary_ip(const DriveSpec& d, double t);

/// Mean shift produced by D(beta): sqrt2 (Re beta, Im beta).
PhaseVector displacement_shift(cplx beta);

}  // namespace qpic
