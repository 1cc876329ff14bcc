#include "qpic/drive.hpp"

#include <cmath>
#include <numbers>

namespace qpic {

std::complex<double> LinearDrive::alpha() const { return std::complex<double>(a, b) / std::numbers::sqrt2; }

DriveSpec DriveSpec::free(double omega0) {
  DriveSpec d{omega0, FreeDrive{}};
  d.validate();
  return d;
}

DriveSpec DriveSpec::linear(double omega0, LinearDrive drive) {
  DriveSpec d{omega0, drive};
  d.validate();
  return d;
}

DriveSpec DriveSpec::quadratic(double omega0, double kappa) {
  DriveSpec d{omega0, QuadraticDrive{kappa}};
  d.validate();
  return d;
}

const LinearDrive& DriveSpec::linear_drive() const {
  if (const auto* l = std::get_if<LinearDrive>(&kind)) return *l;
  throw std::logic_error("drive is not linear");
}

const QuadraticDrive& DriveSpec::quadratic_drive() const {
  if (const auto* q = std::get_if<QuadraticDrive>(&kind)) return *q;
  throw std::logic_error("drive is not quadratic");
}

double DriveSpec::big_omega() const { return omega0 + linear_drive().omega1; }

bool DriveSpec::is_resonant() const {
  return drive_kind() == DriveKind::linear && std::fabs(big_omega()) < resonance_threshold();
}

void DriveSpec::validate() const {
  if (!std::isfinite(omega0) || !(omega0 > 0.0)) {
    throw std::domain_error("drive: omega0 must be finite and > 0");
  }
  if (const auto* l = std::get_if<LinearDrive>(&kind)) {
    if (!std::isfinite(l->g) || !std::isfinite(l->a) || !std::isfinite(l->b) || !std::isfinite(l->omega1)) {
      throw std::domain_error("drive: non-finite linear drive parameter");
    }
  }
  if (const auto* q = std::get_if<QuadraticDrive>(&kind)) {
    if (!std::isfinite(q->kappa)) throw std::domain_error("drive: non-finite kappa");
  }
}

const char* to_string(DriveKind kind) {
  switch (kind) {
    case DriveKind::free: return "free";
    case DriveKind::linear: return "linear";
    case DriveKind::quadratic: return "quadratic";
  }
  return "?";
}

}  // namespace qpic
