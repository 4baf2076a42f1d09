#include "rigidstab/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rigidstab/json_io.hpp"
#include "rigidstab/linalg.hpp"

namespace rigidstab {

FinePencilCheck fine_pencil_check(const StationaryRotation& rot,
                                  double rel_tol) {
  FinePencilCheck out;
  const double lam_min = *std::min_element(rot.lam.begin(), rot.lam.end());
  const double min_sq = lam_min * lam_min;
  out.alpha = 0.25 * min_sq;
  out.beta = -0.75 * min_sq;

  const PencilParameter pa = PencilParameter::finite(out.alpha);
  const PencilParameter pb = PencilParameter::finite(out.beta);
  const int n = rot.body.n;
  const auto pairs = antisym_index_pairs(n);

  std::vector<Eigen::MatrixXcd> gen, mapped;
  for (const auto& [p, q] : pairs) {
    gen.push_back(antisym_unit(n, p, q).cast<std::complex<double>>());
    mapped.push_back(pencil_isomorphism(out.alpha, out.beta, gen.back(), rot.lam));
  }
  for (std::size_t a = 0; a < gen.size(); ++a) {
    for (std::size_t b = a + 1; b < gen.size(); ++b) {
      const Eigen::MatrixXcd lhs = pencil_isomorphism(
          out.alpha, out.beta, bracket_lambda(gen[a], gen[b], rot.lam, pa),
          rot.lam);
      const Eigen::MatrixXcd rhs = bracket_lambda(mapped[a], mapped[b], rot.lam, pb);
      const double defect = (lhs - rhs).norm() / (1.0 + rhs.norm());
      out.max_defect = std::max(out.max_defect, defect);
    }
  }
  out.ok = out.max_defect <= rel_tol;
  return out;
}

ProbeAssessment assess_probe(const StationaryRotation& rot,
                             const Verdict& verdict, const ProbeOptions& opt,
                             const Tolerances& tol) {
  ProbeAssessment out;
  out.options = opt;

  const FormulaSpectrum fs = linearized_spectrum_formula(rot, tol);
  for (const std::complex<double>& s : fs.multiset) {
    out.predicted_rate = std::max(out.predicted_rate, std::abs(s.real()));
  }
  out.rate_applicable = out.predicted_rate > 1e-12;

  out.result = perturbation_probe(rot, opt);

  std::ostringstream note;
  switch (verdict.status) {
    case Stability::Stable:
      out.verdict_consistent = !out.result.escaped;
      note << (out.result.escaped ? "escaped despite a stable verdict"
                                  : "deviation stayed bounded")
           << "; max deviation " << format_number(out.result.max_deviation)
           << " (" << format_number(out.result.max_deviation / opt.epsilon)
           << " times epsilon)";
      break;
    case Stability::Unstable:
      if (!out.rate_applicable) {
        out.verdict_consistent = true;
        note << "all predicted growth rates vanish; no rate comparison";
      } else if (!out.result.escaped) {
        out.verdict_consistent = false;
        note << "no escape within the horizon; predicted rate "
             << format_number(out.predicted_rate);
      } else {
        const double rel = std::abs(out.result.growth_rate - out.predicted_rate) /
                           out.predicted_rate;
        out.verdict_consistent = rel <= 0.10;
        note << "measured growth " << format_number(out.result.growth_rate)
             << " vs predicted " << format_number(out.predicted_rate)
             << " (relative gap " << format_number(rel) << ")";
      }
      break;
    case Stability::InconclusiveTangency:
      out.verdict_consistent = true;
      note << "tangent diagram: no prediction to test";
      break;
  }
  out.note = note.str();
  return out;
}

AnalysisReport analyze(const StationaryRotation& rot, const Tolerances& tol,
                       const AnalysisOptions& opt) {
  AnalysisReport r;
  r.rotation = rot;
  r.tol = tol;
  r.diagram = build_diagram(rot, tol);
  r.verdict = stability_verdict(r.diagram);

  r.parameters = distinct_spectrum(r.diagram);
  if (std::none_of(r.parameters.begin(), r.parameters.end(),
                   [](const PencilParameter& p) { return p.infinite; })) {
    r.parameters.push_back(PencilParameter::infinity());
  }

  if (opt.with_spectra) r.spectra = compare_spectra(rot, tol);
  if (opt.with_certificates) {
    r.diagonalizability = diagonalizability_check(r.diagram);
    r.fine_pencil = fine_pencil_check(rot);
    for (const PencilParameter& p : r.parameters) {
      r.certificates.push_back(compactness_certificate(rot, p, tol));
    }
  }
  if (opt.with_classes) {
    for (const PencilParameter& p : r.parameters) {
      r.classes.push_back(classify_g_lambda(rot, p, tol));
    }
  }

  r.warnings = rot.warnings;
  r.warnings.insert(r.warnings.end(), r.diagram.warnings.begin(),
                    r.diagram.warnings.end());
  r.warnings.insert(r.warnings.end(), r.verdict.warnings.begin(),
                    r.verdict.warnings.end());
  return r;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson curve_json(const ParabolicDiagram& d, const CurveRef& c) {
  if (c.kind == CurveRef::ParabolaCurve) {
    return ojson{{"type", "parabola"}, {"plane", d.parabolas[c.index].plane}};
  }
  return ojson{{"type", "line"}, {"axis", d.lines[c.index].axis}};
}

ojson ordinate_json(const std::complex<double>& z) {
  if (z.imag() == 0.0) return z.real();
  return json_complex(z);
}

ojson intersection_json(const ParabolicDiagram& d, const Intersection& s) {
  ojson j;
  j["curves"] = ojson::array({curve_json(d, s.a), curve_json(d, s.b)});
  j["abscissa"] = json_parameter(s.abscissa);
  j["ordinate"] = ordinate_json(s.ordinate);
  j["kind"] = to_string(s.kind);
  j["tangent"] = s.tangent;
  j["multiplicity"] = s.multiplicity;
  return j;
}

ojson complex_list(const std::vector<std::complex<double>>& v) {
  ojson a = ojson::array();
  for (const auto& z : v) a.push_back(json_complex(z));
  return a;
}

}  // namespace

nlohmann::ordered_json report_json(const AnalysisReport& r) {
  ojson j;
  j["schema"] = "rigidstab-report/1";
  j["tool"] = ojson{{"name", kToolName}, {"version", kToolVersion}};
  j["seed"] = r.seed;

  {
    ojson in;
    in["eigenvalues"] = r.rotation.body.eigenvalues;
    ojson planes = ojson::array();
    for (const PlaneSpec& p : r.rotation.spec.planes) {
      planes.push_back(ojson{{"axes", {p.axis_a, p.axis_b}}, {"omega", p.omega}});
    }
    in["planes"] = planes;
    in["tolerances"] = ojson{{"class_tol", r.tol.class_tol},
                             {"rank_tol", r.tol.rank_tol},
                             {"pd_tol", r.tol.pd_tol},
                             {"asymmetry_tol", r.tol.asymmetry_tol}};
    j["input"] = in;
  }

  j["rotation"] = ojson{{"momenta", r.rotation.momenta},
                        {"slot_axes", r.rotation.perm}};

  {
    ojson v;
    v["status"] = to_string(r.verdict.status);
    ojson w = ojson::array();
    for (const Intersection& s : r.verdict.witnesses) {
      w.push_back(intersection_json(r.diagram, s));
    }
    v["witnesses"] = w;
    j["verdict"] = v;
  }

  {
    ojson d;
    ojson ps = ojson::array();
    for (const Parabola& p : r.diagram.parabolas) {
      ps.push_back(ojson{{"plane", p.plane}, {"p", p.p}, {"q", p.q}, {"m", p.m}});
    }
    d["parabolas"] = ps;
    ojson ls = ojson::array();
    for (const VerticalLine& l : r.diagram.lines) {
      ls.push_back(ojson{{"axis", l.axis}, {"x", l.x0}});
    }
    d["lines"] = ls;
    ojson is = ojson::array();
    for (const Intersection& s : r.diagram.intersections) {
      is.push_back(intersection_json(r.diagram, s));
    }
    d["intersections"] = is;
    j["diagram"] = d;
  }

  {
    ojson ps = ojson::array();
    for (const PencilParameter& p : r.parameters) ps.push_back(json_parameter(p));
    j["spectrum_parameters"] = ps;
  }

  if (r.spectra) {
    ojson s;
    s["formula"] = complex_list(r.spectra->formula);
    s["oracle"] = complex_list(r.spectra->oracle);
    s["max_mismatch"] = r.spectra->max_mismatch;
    s["tangent_dim"] = r.spectra->tangent_dim;
    s["zero_modes"] = r.spectra->zero_modes;
    s["invariance_defect"] = r.spectra->invariance_defect;
    j["spectra"] = s;
  }

  {
    ojson c;
    if (r.diagonalizability) {
      ojson t = ojson::array();
      for (const Intersection& s : r.diagonalizability->tangencies) {
        t.push_back(intersection_json(r.diagram, s));
      }
      c["diagonalizable"] = r.diagonalizability->ok;
      c["tangencies"] = t;
    }
    if (r.fine_pencil) {
      c["fine_pencil"] = ojson{{"alpha", r.fine_pencil->alpha},
                               {"beta", r.fine_pencil->beta},
                               {"max_defect", r.fine_pencil->max_defect},
                               {"ok", r.fine_pencil->ok}};
    }
    if (!r.certificates.empty()) {
      ojson cc = ojson::array();
      for (const CompactnessCertificate& cert : r.certificates) {
        ojson e;
        e["lambda"] = json_parameter(cert.lambda);
        e["applicable"] = cert.applicable;
        e["compact"] = cert.compact;
        e["min_eigenvalue"] = cert.min_eigenvalue;
        e["element"] = cert.element;
        e["note"] = cert.note;
        cc.push_back(e);
      }
      c["compactness"] = cc;
    }
    if (!c.empty()) j["certificates"] = c;
  }

  if (!r.classes.empty()) {
    ojson cs = ojson::array();
    for (const LieClassification& c : r.classes) {
      ojson e;
      e["lambda"] = json_parameter(c.lambda);
      e["algebra"] = c.canonical;
      ojson fs = ojson::array();
      for (const LieFactor& f : c.factors) {
        fs.push_back(ojson{{"name", f.name}, {"dim", f.dim}});
      }
      e["factors"] = fs;
      e["residual_dim"] = c.residual_dim;
      e["total_dim"] = c.total_dim;
      e["complex_case"] = c.complex_case;
      cs.push_back(e);
    }
    j["lie_classes"] = cs;
  }

  if (r.probe) {
    const ProbeAssessment& p = *r.probe;
    ojson e;
    e["epsilon"] = p.options.epsilon;
    e["trials"] = p.options.trials;
    e["seed"] = p.options.seed;
    e["dt"] = p.options.dt;
    e["t_max"] = p.options.t_max;
    e["max_deviation"] = p.result.max_deviation;
    e["growth_rate"] = p.result.growth_rate;
    e["escaped"] = p.result.escaped;
    e["predicted_rate"] = p.predicted_rate;
    e["rate_applicable"] = p.rate_applicable;
    e["verdict_consistent"] = p.verdict_consistent;
    e["note"] = p.note;
    ojson ts = ojson::array();
    for (const ProbeTrial& t : p.result.trials) {
      ts.push_back(ojson{{"growth_rate", t.growth_rate},
                         {"max_deviation", t.max_deviation},
                         {"escaped", t.escaped},
                         {"t_end", t.t_end}});
    }
    e["trial_detail"] = ts;
    j["probe"] = e;
  }

  j["warnings"] = r.warnings;
  return j;
}

std::string trajectory_csv(const std::vector<double>& times,
                           const std::vector<Eigen::MatrixXd>& states,
                           const std::vector<double>& lam) {
  if (times.size() != states.size()) {
    throw Error(ErrorCode::BadDimensions,
                "time and state sample counts differ");
  }
  const int n = static_cast<int>(lam.size());
  const auto pairs = antisym_index_pairs(n);

  std::ostringstream os;
  os << "t";
  for (const auto& [p, q] : pairs) os << ",m_" << p << "_" << q;
  for (int shift = 0; shift < 3; ++shift) {
    os << ",tr2_s" << shift << ",tr4_s" << shift;
  }
  os << "\n";

  for (std::size_t r = 0; r < times.size(); ++r) {
    os << format_number(times[r]);
    for (const auto& [p, q] : pairs) os << "," << format_number(states[r](p, q));
    const std::vector<double> inv = trace_invariants(states[r], lam);
    for (std::size_t k = 0; k < inv.size(); k += 2) {
      os << "," << format_number(inv[k]) << "," << format_number(inv[k + 1]);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace rigidstab
