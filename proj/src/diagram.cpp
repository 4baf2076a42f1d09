#include "rigidstab/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rigidstab {

namespace {

double sign_or_one(double x) { return x < 0.0 ? -1.0 : 1.0; }

Intersection finite_point(const Parabola& pa, double x, bool tangent, int mult) {
  Intersection s;
  s.abscissa = PencilParameter::finite(x);
  const double y = pa.chi(x);
  s.ordinate = y;
  s.kind = y < 0.0 ? IntersectionKind::RealLower : IntersectionKind::RealUpper;
  s.tangent = tangent;
  s.multiplicity = mult;
  return s;
}

bool abscissa_less(const Intersection& u, const Intersection& v) {
  if (u.abscissa.infinite != v.abscissa.infinite) return v.abscissa.infinite;
  if (u.abscissa.infinite) return false;
  const auto a = u.abscissa.value;
  const auto b = v.abscissa.value;
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<Intersection> intersect_parabolas(const Parabola& pa, const Parabola& pb,
                                              const Tolerances& tol) {
  const double ma2 = pa.m * pa.m;
  const double mb2 = pb.m * pb.m;
  const double sa = pa.p + pa.q;
  const double sb = pb.p + pb.q;

  // pair quadratic mb2 (x-p_a)(x-q_a) - ma2 (x-p_b)(x-q_b), scaled by the
  // larger momentum so the coefficient tests are dimensionless in m
  const double ms = std::max(ma2, mb2);
  const double c2 = (mb2 - ma2) / ms;
  const double c1 = (ma2 * sb - mb2 * sa) / ms;
  const double c0 = (mb2 * (pa.p * pa.q) - ma2 * (pb.p * pb.q)) / ms;
  const double sx = std::max({std::abs(pa.p), std::abs(pa.q), std::abs(pb.p),
                              std::abs(pb.q), 1.0});

  std::vector<Intersection> out;
  out.reserve(2);

  if (std::abs(c2) <= tol.class_tol) {
    // equal leading coefficients: one intersection escapes to infinity
    Intersection inf;
    inf.abscissa = PencilParameter::infinity();
    inf.ordinate = 0.5 * (pa.leading() + pb.leading());
    inf.kind = IntersectionKind::Infinite;
    if (std::abs(c1) <= tol.class_tol * sx) {
      if (std::abs(c0) <= tol.class_tol * sx * sx) {
        throw Error(ErrorCode::DegenerateCurvePair,
                    "parabolas coincide; intersection set is not discrete");
      }
      inf.tangent = true;
      inf.multiplicity = 2;
      out.push_back(inf);
      return out;
    }
    inf.tangent = false;
    inf.multiplicity = 1;
    out.push_back(finite_point(pa, -c0 / c1, false, 1));
    out.push_back(inf);
    std::sort(out.begin(), out.end(), abscissa_less);
    return out;
  }

  const double B = c1 / c2;
  const double C = c0 / c2;
  const double D = B * B - 4.0 * C;
  const double band = tol.class_tol * std::max(B * B, 4.0 * std::abs(C));

  if (std::abs(D) <= band) {
    out.push_back(finite_point(pa, -0.5 * B, true, 2));
    return out;
  }
  if (D > 0.0) {
    const double r1 = -0.5 * (B + sign_or_one(B) * std::sqrt(D));
    const double r2 = r1 != 0.0 ? C / r1 : -B;  // Vieta fallback is exact here
    out.push_back(finite_point(pa, r1, false, 1));
    out.push_back(finite_point(pa, r2, false, 1));
    std::sort(out.begin(), out.end(), abscissa_less);
    return out;
  }

  const std::complex<double> root(-0.5 * B, 0.5 * std::sqrt(-D));
  for (const auto& x : {std::conj(root), root}) {
    Intersection s;
    s.abscissa = PencilParameter::finite(x);
    s.ordinate = pa.chi(x);
    s.kind = IntersectionKind::Complex;
    s.tangent = false;
    s.multiplicity = 1;
    out.push_back(s);
  }
  return out;
}

Intersection intersect_line_parabola(const VerticalLine& l, const Parabola& pb,
                                     const Tolerances& tol) {
  const double x0 = l.x0;
  const double y = pb.chi(x0);
  const double yscale = (std::abs(x0) + std::abs(pb.p)) *
                        (std::abs(x0) + std::abs(pb.q)) / (pb.m * pb.m);
  if (std::abs(y) <= tol.class_tol * std::max(yscale, 1e-300)) {
    std::ostringstream os;
    os << "vertical line x = " << x0 << " passes through a root of a parabola; "
          "the fixed axis shares an eigenvalue with a rotation plane";
    throw Error(ErrorCode::OnAxisIntersection, os.str());
  }
  Intersection s;
  s.a = CurveRef{CurveRef::LineCurve, 0};
  s.b = CurveRef{CurveRef::ParabolaCurve, 0};
  s.abscissa = PencilParameter::finite(x0);
  s.ordinate = y;
  s.kind = y < 0.0 ? IntersectionKind::RealLower : IntersectionKind::RealUpper;
  s.tangent = false;
  s.multiplicity = 1;
  return s;
}

ParabolicDiagram build_diagram(const StationaryRotation& rot,
                               const Tolerances& tol) {
  ParabolicDiagram d;
  d.tol = tol;
  d.warnings = rot.warnings;

  for (int k = 0; k < rot.m; ++k) {
    Parabola pb;
    pb.plane = k + 1;
    const double r1 = rot.lam[2 * k] * rot.lam[2 * k];
    const double r2 = rot.lam[2 * k + 1] * rot.lam[2 * k + 1];
    pb.p = std::min(r1, r2);
    pb.q = std::max(r1, r2);
    pb.m = rot.momenta[k];
    d.parabolas.push_back(pb);
  }
  for (int s = 2 * rot.m; s < rot.body.n; ++s) {
    VerticalLine l;
    l.axis = rot.perm[s];
    l.x0 = rot.lam[s] * rot.lam[s];
    d.lines.push_back(l);
  }

  for (int i = 0; i < static_cast<int>(d.parabolas.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(d.parabolas.size()); ++j) {
      auto pts = intersect_parabolas(d.parabolas[i], d.parabolas[j], tol);
      for (Intersection& s : pts) {
        s.a = CurveRef{CurveRef::ParabolaCurve, i};
        s.b = CurveRef{CurveRef::ParabolaCurve, j};
        d.intersections.push_back(s);
      }
      // flag classifications that sit close to the tolerance band
      const double ma2 = d.parabolas[i].m * d.parabolas[i].m;
      const double mb2 = d.parabolas[j].m * d.parabolas[j].m;
      const double ms = std::max(ma2, mb2);
      const double c2 = (mb2 - ma2) / ms;
      if (std::abs(c2) > tol.class_tol) {
        const double B = (ma2 * (d.parabolas[j].p + d.parabolas[j].q) -
                          mb2 * (d.parabolas[i].p + d.parabolas[i].q)) / ms / c2;
        const double C = (mb2 * d.parabolas[i].p * d.parabolas[i].q -
                          ma2 * d.parabolas[j].p * d.parabolas[j].q) / ms / c2;
        const double D = B * B - 4.0 * C;
        const double band = tol.class_tol * std::max(B * B, 4.0 * std::abs(C));
        if (band < std::abs(D) && std::abs(D) <= 1e3 * band) {
          std::ostringstream os;
          os << "intersection of planes " << i + 1 << " and " << j + 1
             << " is within 1000x of the tangency tolerance; classification is "
                "marginal";
          d.warnings.push_back(os.str());
        }
      }
    }
  }
  for (int li = 0; li < static_cast<int>(d.lines.size()); ++li) {
    for (int pi = 0; pi < static_cast<int>(d.parabolas.size()); ++pi) {
      Intersection s = intersect_line_parabola(d.lines[li], d.parabolas[pi], tol);
      s.a = CurveRef{CurveRef::LineCurve, li};
      s.b = CurveRef{CurveRef::ParabolaCurve, pi};
      d.intersections.push_back(s);
    }
  }

  for (const Intersection& s : d.intersections) {
    d.spectrum.push_back(s.abscissa);
  }
  return d;
}

Verdict stability_verdict(const ParabolicDiagram& d) {
  Verdict v;
  v.warnings = d.warnings;
  std::vector<Intersection> bad;
  std::vector<Intersection> tangent;
  for (const Intersection& s : d.intersections) {
    if (s.kind == IntersectionKind::Complex ||
        s.kind == IntersectionKind::RealLower) {
      bad.push_back(s);
    }
    if (s.tangent) tangent.push_back(s);
  }
  if (!bad.empty()) {
    v.status = Stability::Unstable;
    v.witnesses = bad;
    return v;
  }
  if (!tangent.empty()) {
    v.status = Stability::InconclusiveTangency;
    v.witnesses = tangent;
    v.warnings.push_back(
        "diagram has a tangency: the sufficient stability test does not "
        "apply; tangential contact in the upper half-plane is expected to be "
        "harmless but is not asserted here");
    return v;
  }
  v.status = Stability::Stable;
  return v;
}

std::vector<PencilParameter> distinct_spectrum(const ParabolicDiagram& d) {
  std::vector<std::complex<double>> finite;
  bool has_inf = false;
  double scale = 1.0;
  for (const PencilParameter& p : d.spectrum) {
    if (p.infinite) {
      has_inf = true;
    } else {
      finite.push_back(p.value);
      scale = std::max(scale, std::abs(p.value));
    }
  }
  std::sort(finite.begin(), finite.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<PencilParameter> out;
  const double tol = d.tol.class_tol * scale * 10.0;
  size_t i = 0;
  while (i < finite.size()) {
    size_t j = i + 1;
    std::complex<double> sum = finite[i];
    while (j < finite.size() && std::abs(finite[j] - finite[j - 1]) <= tol) {
      sum += finite[j];
      ++j;
    }
    out.push_back(PencilParameter::finite(sum / static_cast<double>(j - i)));
    i = j;
  }
  if (has_inf) out.push_back(PencilParameter::infinity());
  return out;
}

}  // namespace rigidstab
