#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rigidstab {

inline constexpr const char* kToolName = "rigidstab";
inline constexpr const char* kToolVersion = "0.1.0";

enum class ErrorCode {
  NonPositiveEigenvalue,
  DegenerateBody,
  BadIndex,
  AxisReuse,
  ZeroAngularVelocity,
  BadDimensions,
  OnAxisIntersection,
  DegenerateCurvePair,
  NotDegenerate,
  NotInSpectrum,
  BadParameters,
  DegenerateFormula,
  NegativeResidualDimension,
  BadConfig,
  IoError,
};

struct Error : std::runtime_error {
  ErrorCode code;
  Error(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

// Numerical policy knobs. All comparisons in the library are relative to a
// problem-dependent scale; these hold the dimensionless factors.
struct Tolerances {
  // root / intersection classification on the monic pair quadratic
  double class_tol = 1e-9;
  // singular values below rank_tol * sigma_max count as zero
  double rank_tol = 1e-10;
  // definiteness margin for quadratic-form certificates, relative to form norm
  double pd_tol = 1e-10;
  // minimal admissible relative gap between body eigenvalues
  double asymmetry_tol = 1e-9;
};

// A point on the extended parameter line: a finite complex number or infinity.
struct PencilParameter {
  std::complex<double> value{0.0, 0.0};
  bool infinite = false;

  static PencilParameter finite(std::complex<double> v) { return {v, false}; }
  static PencilParameter finite(double v) { return {{v, 0.0}, false}; }
  static PencilParameter infinity() { return {{0.0, 0.0}, true}; }

  bool is_real(double tol = 0.0) const {
    return !infinite && std::abs(value.imag()) <= tol;
  }
};

enum class Stability { Stable, Unstable, InconclusiveTangency };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::InconclusiveTangency: return "inconclusive_tangency";
  }
  return "?";
}

}  // namespace rigidstab
