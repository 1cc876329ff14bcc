#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

#include "qpic/phase_core.hpp"

namespace qpic {

struct FreeDrive {
  friend bool operator==(const FreeDrive&, const FreeDrive&) = default;
};

/// V(t) = g (e^{-i w1 t} alpha a + e^{i w1 t} alpha^* a^dag), alpha = (a + i b)/sqrt2.
struct LinearDrive {
  double g = 0.0;
  double a = 0.0;
  double b = 0.0;
  double omega1 = 0.0;

  std::complex<double> alpha() const;
  /// Phase-space image (a, -b) of alpha^*.
  PhaseVector conj_vector() const { return {a, -b}; }
  friend bool operator==(const LinearDrive&, const LinearDrive&) = default;
};

/// H(t) = 2 w0 K0 + i kappa (e^{2 i w0 t} K- - e^{-2 i w0 t} K+).
struct QuadraticDrive {
  double kappa = 0.0;
  friend bool operator==(const QuadraticDrive&, const QuadraticDrive&) = default;
};

enum class DriveKind { free, linear, quadratic };

class ResonanceError : public std::domain_error {
 public:
  explicit ResonanceError(const std::string& what) : std::domain_error(what) {}
};

struct DriveSpec {
  double omega0 = 1.0;
  std::variant<FreeDrive, LinearDrive, QuadraticDrive> kind = FreeDrive{};

  static DriveSpec free(double omega0);
  static DriveSpec linear(double omega0, LinearDrive drive);
  static DriveSpec quadratic(double omega0, double kappa);

  DriveKind drive_kind() const { return static_cast<DriveKind>(kind.index()); }

  /// Throws std::logic_error when the drive has another kind.
  const LinearDrive& linear_drive() const;
  const QuadraticDrive& quadratic_drive() const;

  /// Omega = w0 + w1 (linear drive only).
  double big_omega() const;
  /// |Omega| below which the general linear formulas are singular.
  double resonance_threshold() const { return 1e-9 * omega0; }
  bool is_resonant() const;

  /// Throws std::domain_error on w0 <= 0 or non-finite parameters.
  void validate() const;

  friend bool operator==(const DriveSpec&, const DriveSpec&) = default;
};

const char* to_string(DriveKind kind);

}  // namespace qpic
