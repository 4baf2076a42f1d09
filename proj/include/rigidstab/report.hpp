#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rigidstab/body.hpp"
#include "rigidstab/diagram.hpp"
#include "rigidstab/dynamics.hpp"
#include "rigidstab/lieclass.hpp"
#include "rigidstab/pencil.hpp"
#include "rigidstab/spectrum.hpp"

namespace rigidstab {

// Certifies that the bracket family is one isomorphism class below the
// smallest squared eigenvalue: the conjugation between two sample
// parameters intertwines the brackets on every elementary generator pair.
struct FinePencilCheck {
  double alpha = 0.0;
  double beta = 0.0;
  double max_defect = 0.0;
  bool ok = false;
};

FinePencilCheck fine_pencil_check(const StationaryRotation& rot,
                                  double rel_tol = 1e-8);

// Perturbation experiment outcome measured against the verdict: stable
// rotations must stay bounded, unstable ones with a nonzero predicted rate
// must escape at that rate.
struct ProbeAssessment {
  ProbeOptions options;
  ProbeResult result;
  double predicted_rate = 0.0;  // max |Re sigma| over the formula spectrum
  bool rate_applicable = false; // false when every predicted rate vanishes
  bool verdict_consistent = true;
  std::string note;
};

ProbeAssessment assess_probe(const StationaryRotation& rot,
                             const Verdict& verdict, const ProbeOptions& opt,
                             const Tolerances& tol = {});

struct AnalysisOptions {
  bool with_spectra = true;
  bool with_classes = true;
  bool with_certificates = true;
};

struct AnalysisReport {
  StationaryRotation rotation;
  Tolerances tol;
  ParabolicDiagram diagram;
  Verdict verdict;
  std::vector<PencilParameter> parameters;  // distinct spectrum + infinity
  std::optional<SpectrumComparison> spectra;
  std::optional<DiagonalizabilityCheck> diagonalizability;
  std::optional<FinePencilCheck> fine_pencil;
  std::vector<CompactnessCertificate> certificates;
  std::vector<LieClassification> classes;
  std::optional<ProbeAssessment> probe;
  std::vector<std::string> warnings;  // rotation + diagram + verdict
  std::uint64_t seed = 0;
};

AnalysisReport analyze(const StationaryRotation& rot,
                       const Tolerances& tol = {},
                       const AnalysisOptions& opt = {});

nlohmann::ordered_json report_json(const AnalysisReport& r);

// CSV rows (time, strict upper-triangle momentum entries, conserved traces),
// numbers in the pinned %.12g format.
std::string trajectory_csv(const std::vector<double>& times,
                           const std::vector<Eigen::MatrixXd>& states,
                           const std::vector<double>& lam);

}  // namespace rigidstab
