#include "rigidstab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace rigidstab {

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* kUpper = "#2b6cb0";
const char* kLower = "#c53030";
const char* kCurve = "#4a5568";
const char* kLine = "#718096";
const char* kAxis = "#1a202c";

}  // namespace

std::string render_svg(const ParabolicDiagram& d, const SvgOptions& opt) {
  // world x-range: squared eigenvalues padded by 20%, stretched to cover
  // every finite intersection abscissa
  double sq_min = 0.0, sq_max = 1.0;
  {
    std::vector<double> sq;
    for (const Parabola& p : d.parabolas) {
      sq.push_back(p.p);
      sq.push_back(p.q);
    }
    for (const VerticalLine& l : d.lines) sq.push_back(l.x0);
    if (!sq.empty()) {
      sq_min = *std::min_element(sq.begin(), sq.end());
      sq_max = *std::max_element(sq.begin(), sq.end());
    }
  }
  double xlo = 0.8 * sq_min;
  double xhi = 1.2 * sq_max;
  double y_cap = 0.0;
  for (const Intersection& s : d.intersections) {
    if (s.abscissa.infinite || !s.abscissa.is_real(0.0)) continue;
    const double x = s.abscissa.value.real();
    const double span = std::max(1.0, xhi - xlo);
    xlo = std::min(xlo, x - 0.05 * span);
    xhi = std::max(xhi, x + 0.05 * span);
    y_cap = std::max(y_cap, std::abs(s.ordinate.real()));
  }
  if (xhi - xlo < 1e-9) xhi = xlo + 1.0;

  // y-range: three times the largest ordinate, with a fallback from the
  // curve values at the edges when nothing intersects
  double Y = 3.0 * y_cap;
  if (Y <= 0.0) {
    for (const Parabola& p : d.parabolas) {
      Y = std::max({Y, std::abs(p.chi(xlo)), std::abs(p.chi(xhi))});
    }
    Y = std::max(Y, 1.0);
  }

  const double W = opt.width, H = opt.height;
  const double ml = 56, mr = 20, mt = 20, mb = 44;
  const auto X = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (W - ml - mr); };
  const auto Yp = [&](double y) { return H - mb - (y + Y) / (2 * Y) * (H - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
      << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << " "
      << opt.height << "\">\n";
  svg << "<defs><clipPath id=\"plot\"><rect x=\"" << px(ml) << "\" y=\"" << px(mt)
      << "\" width=\"" << px(W - ml - mr) << "\" height=\"" << px(H - mt - mb)
      << "\"/></clipPath></defs>\n";
  svg << "<rect width=\"" << opt.width << "\" height=\"" << opt.height
      << "\" fill=\"white\"/>\n";

  // axes
  svg << "<line x1=\"" << px(ml) << "\" y1=\"" << px(Yp(0)) << "\" x2=\""
      << px(W - mr) << "\" y2=\"" << px(Yp(0)) << "\" stroke=\"" << kAxis
      << "\" stroke-width=\"1\"/>\n";
  if (xlo < 0.0 && xhi > 0.0) {
    svg << "<line x1=\"" << px(X(0)) << "\" y1=\"" << px(mt) << "\" x2=\""
        << px(X(0)) << "\" y2=\"" << px(H - mb) << "\" stroke=\"" << kAxis
        << "\" stroke-width=\"0.5\"/>\n";
  }

  // ticks at the squared eigenvalues
  std::set<double> ticks;
  for (const Parabola& p : d.parabolas) {
    ticks.insert(p.p);
    ticks.insert(p.q);
  }
  for (const VerticalLine& l : d.lines) ticks.insert(l.x0);
  for (double t : ticks) {
    svg << "<line x1=\"" << px(X(t)) << "\" y1=\"" << px(Yp(0) - 4) << "\" x2=\""
        << px(X(t)) << "\" y2=\"" << px(Yp(0) + 4) << "\" stroke=\"" << kAxis
        << "\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << px(X(t)) << "\" y=\"" << px(H - mb + 16)
        << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"" << kAxis << "\">"
        << num(t) << "</text>\n";
  }

  svg << "<g clip-path=\"url(#plot)\">\n";

  // vertical dashed lines of the fixed axes
  for (const VerticalLine& l : d.lines) {
    svg << "<line x1=\"" << px(X(l.x0)) << "\" y1=\"" << px(mt) << "\" x2=\""
        << px(X(l.x0)) << "\" y2=\"" << px(H - mb) << "\" stroke=\"" << kLine
        << "\" stroke-width=\"1.4\" stroke-dasharray=\"6 4\"/>\n";
  }

  // each parabola as one exact quadratic Bezier arc over the full x-range:
  // the control point sits at the tangent-line crossing, which reproduces
  // a quadratic graph exactly and stays exact under the affine map
  for (const Parabola& p : d.parabolas) {
    const double xa = xlo, xb = xhi, xm = 0.5 * (xa + xb);
    const double ya = p.chi(xa), yb = p.chi(xb);
    const double slope_a = (2.0 * xa - p.p - p.q) / (p.m * p.m);
    const double ym = ya + slope_a * (xm - xa);
    svg << "<path d=\"M " << px(X(xa)) << " " << px(Yp(ya)) << " Q " << px(X(xm))
        << " " << px(Yp(ym)) << " " << px(X(xb)) << " " << px(Yp(yb))
        << "\" fill=\"none\" stroke=\"" << kCurve << "\" stroke-width=\"1.6\"/>\n";
  }

  // markers
  for (const Intersection& s : d.intersections) {
    if (s.abscissa.infinite || s.kind == IntersectionKind::Complex) continue;
    const double sx = X(s.abscissa.value.real());
    const double sy = Yp(s.ordinate.real());
    const char* color = s.kind == IntersectionKind::RealLower ? kLower : kUpper;
    if (s.tangent) {
      svg << "<circle cx=\"" << px(sx) << "\" cy=\"" << px(sy)
          << "\" r=\"7\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.6\"/>\n";
      svg << "<circle cx=\"" << px(sx) << "\" cy=\"" << px(sy)
          << "\" r=\"3.2\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.6\"/>\n";
    } else if (s.kind == IntersectionKind::RealLower) {
      svg << "<circle cx=\"" << px(sx) << "\" cy=\"" << px(sy)
          << "\" r=\"4.5\" fill=\"white\" stroke=\"" << color
          << "\" stroke-width=\"1.8\"/>\n";
    } else {
      svg << "<circle cx=\"" << px(sx) << "\" cy=\"" << px(sy)
          << "\" r=\"4.5\" fill=\"" << color << "\"/>\n";
    }
  }
  svg << "</g>\n";

  // legend notes for what has no drawable point
  std::vector<std::string> notes;
  const auto curve_name = [&](const CurveRef& c) {
    std::ostringstream os;
    if (c.kind == CurveRef::ParabolaCurve) {
      os << "plane " << d.parabolas[c.index].plane;
    } else {
      os << "axis " << d.lines[c.index].axis;
    }
    return os.str();
  };
  for (const Intersection& s : d.intersections) {
    if (s.abscissa.infinite) {
      std::ostringstream os;
      os << curve_name(s.a) << " and " << curve_name(s.b) << " meet at infinity"
         << (s.tangent ? " (tangent)" : "");
      notes.push_back(os.str());
    } else if (s.kind == IntersectionKind::Complex &&
               s.abscissa.value.imag() > 0.0) {
      std::ostringstream os;
      os << curve_name(s.a) << " and " << curve_name(s.b) << ": complex pair at x = "
         << num(s.abscissa.value.real()) << " +- "
         << num(s.abscissa.value.imag()) << "i";
      notes.push_back(os.str());
    }
  }
  double ty = mt + 14;
  for (const std::string& t : notes) {
    svg << "<text x=\"" << px(ml + 8) << "\" y=\"" << px(ty)
        << "\" font-size=\"12\" fill=\"" << kLower << "\">" << t << "</text>\n";
    ty += 16;
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rigidstab
