#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rigidstab/body.hpp"
#include "rigidstab/types.hpp"

namespace rigidstab {

// Graph of chi(x) = (x - p)(x - q) / m^2 for one rotation plane.
struct Parabola {
  int plane = 0;   // 1-based plane number
  double p = 0.0;  // squared eigenvalues of the plane's axes, p <= q
  double q = 0.0;
  double m = 0.0;  // plane momentum, m != 0

  double leading() const { return 1.0 / (m * m); }
  double chi(double x) const { return (x - p) * (x - q) / (m * m); }
  std::complex<double> chi(std::complex<double> x) const {
    return (x - p) * (x - q) / (m * m);
  }
  double vertex() const { return 0.5 * (p + q); }
};

// Vertical line x = x0 contributed by a fixed principal axis.
struct VerticalLine {
  int axis = 0;    // 1-based user axis index
  double x0 = 0.0; // squared eigenvalue of the axis
};

enum class IntersectionKind { RealUpper, RealLower, Complex, Infinite };

inline const char* to_string(IntersectionKind k) {
  switch (k) {
    case IntersectionKind::RealUpper: return "real_upper";
    case IntersectionKind::RealLower: return "real_lower";
    case IntersectionKind::Complex: return "complex";
    case IntersectionKind::Infinite: return "infinite";
  }
  return "?";
}

struct CurveRef {
  enum Kind { ParabolaCurve, LineCurve } kind = ParabolaCurve;
  int index = 0;  // position in ParabolicDiagram::parabolas / lines

  friend bool operator==(const CurveRef&, const CurveRef&) = default;
};

struct Intersection {
  CurveRef a, b;
  PencilParameter abscissa;          // infinite for meetings at infinity
  std::complex<double> ordinate{0.0, 0.0};  // common leading coeff if infinite
  IntersectionKind kind = IntersectionKind::RealUpper;
  bool tangent = false;
  int multiplicity = 1;
};

struct ParabolicDiagram {
  std::vector<Parabola> parabolas;
  std::vector<VerticalLine> lines;
  std::vector<Intersection> intersections;
  // Multiset of intersection abscissas (one entry per Intersection record).
  std::vector<PencilParameter> spectrum;
  Tolerances tol;
  std::vector<std::string> warnings;
};

struct Verdict {
  Stability status = Stability::Stable;
  std::vector<Intersection> witnesses;  // offending or tangent intersections
  std::vector<std::string> warnings;
};

// Both intersections of two distinct parabolas, counted with multiplicity.
// Roots come from the pair quadratic
//   m_b^2 (x - p_a)(x - q_a) - m_a^2 (x - p_b)(x - q_b) = 0,
// classified after monic normalization. Equal leading coefficients put one
// intersection at infinity; a vanishing linear part as well makes the
// curves tangent at infinity. Identical curves are rejected.
std::vector<Intersection> intersect_parabolas(const Parabola& a, const Parabola& b,
                                              const Tolerances& tol = {});

// Single transversal intersection of a vertical line with a parabola.
// Throws OnAxisIntersection when the ordinate vanishes at tolerance, which
// means the fixed axis shares an eigenvalue with the plane.
Intersection intersect_line_parabola(const VerticalLine& l, const Parabola& pb,
                                     const Tolerances& tol = {});

// All curves and pairwise intersections for a stationary rotation.
// Line indices refer to user axes; parabola `plane` fields are 1-based plane
// numbers in specification order.
ParabolicDiagram build_diagram(const StationaryRotation& rot,
                               const Tolerances& tol = {});

// Stability of the rotation by inspecting intersections:
// any complex or lower-half-plane point is a definite instability witness;
// otherwise any tangency makes the test inconclusive; otherwise stable.
Verdict stability_verdict(const ParabolicDiagram& d);

// Distinct finite abscissas (clustered at classification tolerance, real and
// complex), followed by infinity when present.
std::vector<PencilParameter> distinct_spectrum(const ParabolicDiagram& d);

}  // namespace rigidstab
