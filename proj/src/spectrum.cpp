#include "rigidstab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rigidstab/linalg.hpp"
#include "rigidstab/pencil.hpp"

namespace rigidstab {

namespace {

using cd = std::complex<double>;

cd chi_value(const StationaryRotation& rot, const PencilParameter& lambda,
             int i) {
  const double mi2 = rot.momenta[i] * rot.momenta[i];
  if (lambda.infinite) return cd(1.0 / mi2, 0.0);
  const cd a0 = rot.lam[2 * i] * rot.lam[2 * i] - lambda.value;
  const cd a1 = rot.lam[2 * i + 1] * rot.lam[2 * i + 1] - lambda.value;
  return a0 * a1 / mi2;
}

cd sqrt_minus_chi(const StationaryRotation& rot, const PencilParameter& lambda,
                  int i, const Tolerances& tol) {
  const cd chi = chi_value(rot, lambda, i);
  const double scale =
      lambda.infinite
          ? 1.0 / (rot.momenta[i] * rot.momenta[i])
          : (std::abs(rot.lam[2 * i] * rot.lam[2 * i] - lambda.value) +
             std::abs(rot.lam[2 * i + 1] * rot.lam[2 * i + 1] - lambda.value) +
             1.0) /
                (rot.momenta[i] * rot.momenta[i]);
  if (std::abs(chi) <= tol.class_tol * tol.class_tol * scale) {
    std::ostringstream os;
    os << "parabola of plane " << i + 1
       << " vanishes at a spectral parameter; the closed eigenvalue form is "
          "singular there";
    throw Error(ErrorCode::DegenerateFormula, os.str());
  }
  return std::sqrt(-chi);
}

double axis_sum(const StationaryRotation& rot, int i) {
  return rot.lam[2 * i] + rot.lam[2 * i + 1];
}

cd g_term(const StationaryRotation& rot, int i, cd root) {
  return (root + rot.lam[2 * i] * rot.lam[2 * i + 1]) / axis_sum(rot, i);
}

}  // namespace

Eigen::Matrix2cd adjoint_matrix_pair(const StationaryRotation& rot,
                                     const PencilParameter& lambda, int i, int j,
                                     const std::vector<std::complex<double>>& x) {
  const auto a = pencil_scalars(rot.lam, lambda);
  const cd factor = x[i] - (rot.momenta[j] / rot.momenta[i]) * x[j];
  Eigen::Matrix2cd A = Eigen::Matrix2cd::Zero();
  A(0, 1) = -a[2 * i] * factor;
  A(1, 0) = a[2 * i + 1] * factor;
  return A;
}

Eigen::Matrix2cd adjoint_matrix_axis(const StationaryRotation& rot,
                                     const PencilParameter& lambda, int i, int /*s*/,
                                     const std::vector<std::complex<double>>& x) {
  const auto a = pencil_scalars(rot.lam, lambda);
  Eigen::Matrix2cd A = Eigen::Matrix2cd::Zero();
  A(0, 1) = x[i] * a[2 * i + 1];
  A(1, 0) = -x[i] * a[2 * i];
  return A;
}

std::complex<double> adjoint_eigenvalue_pair(const StationaryRotation& rot,
                                             const PencilParameter& lambda,
                                             int i, int j,
                                             const std::vector<std::complex<double>>& x) {
  const cd root = sqrt_minus_chi(rot, lambda, i, Tolerances{});
  return root * (rot.momenta[j] * x[j] - rot.momenta[i] * x[i]);
}

std::complex<double> adjoint_eigenvalue_axis(const StationaryRotation& rot,
                                             const PencilParameter& lambda,
                                             int i, int /*s*/,
                                             const std::vector<std::complex<double>>& x) {
  const cd root = sqrt_minus_chi(rot, lambda, i, Tolerances{});
  return root * rot.momenta[i] * x[i];
}

bool exotic_condition_check(const StationaryRotation& rot, int i, int j,
                            double root, const Tolerances& tol) {
  const cd gi = g_term(rot, i, cd(root, 0.0));
  const cd gj = g_term(rot, j, cd(root, 0.0));
  const double scale = std::abs(gi) + std::abs(gj) + 1.0;
  return std::abs(gi - gj) <= tol.class_tol * scale;
}

FormulaSpectrum linearized_spectrum_formula(const StationaryRotation& rot,
                                            const Tolerances& tol) {
  FormulaSpectrum out;
  const ParabolicDiagram d = build_diagram(rot, tol);

  for (int i = 0; i < rot.m; ++i) {
    for (int j = i + 1; j < rot.m; ++j) {
      const auto pts = intersect_parabolas(d.parabolas[i], d.parabolas[j], tol);
      for (const Intersection& s : pts) {
        SpectrumEntry e;
        e.source = SpectrumEntry::Source::PlanePair;
        e.i = i;
        e.j = j;
        e.root = s.abscissa;
        e.multiplicity = s.multiplicity;
        if (s.abscissa.infinite) {
          const cd sq = std::sqrt(-chi_value(rot, s.abscissa, i));
          e.sigma = sq * (rot.momenta[j] * rot.omega[j] -
                          rot.momenta[i] * rot.omega[i]);
          const double wscale =
              std::abs(rot.momenta[j] * rot.omega[j]) +
              std::abs(rot.momenta[i] * rot.omega[i]) + 1.0;
          e.degenerate = std::abs(e.sigma) <=
                         tol.class_tol * wscale * std::abs(sq);
        } else {
          const cd root = s.abscissa.value;
          const cd gi = g_term(rot, i, root);
          const cd gj = g_term(rot, j, root);
          e.sigma = (gi - gj) / sqrt_minus_chi(rot, s.abscissa, i, tol);
          e.degenerate =
              std::abs(gi - gj) <= tol.class_tol * (std::abs(gi) + std::abs(gj) + 1.0);
        }
        out.entries.push_back(e);
      }
    }
  }
  for (int i = 0; i < rot.m; ++i) {
    for (int s = 2 * rot.m; s < rot.body.n; ++s) {
      SpectrumEntry e;
      e.source = SpectrumEntry::Source::PlaneAxis;
      e.i = i;
      e.j = s;
      const double ls = rot.lam[s];
      e.root = PencilParameter::finite(ls * ls);
      const cd denom = sqrt_minus_chi(rot, e.root, i, tol);
      e.sigma = (ls - rot.lam[2 * i]) * (ls - rot.lam[2 * i + 1]) /
                (axis_sum(rot, i) * denom);
      e.multiplicity = 1;
      e.degenerate = false;
      out.entries.push_back(e);
    }
  }

  for (const SpectrumEntry& e : out.entries) {
    for (int c = 0; c < e.multiplicity; ++c) {
      out.multiset.push_back(e.sigma);
      out.multiset.push_back(-e.sigma);
    }
  }
  return out;
}

Eigen::MatrixXd linearize_exact(const StationaryRotation& rot) {
  const int n = rot.body.n;
  const auto pairs = antisym_index_pairs(n);
  const int N = static_cast<int>(pairs.size());
  Eigen::MatrixXd D(N, N);
  for (int l = 0; l < N; ++l) {
    const auto [r, s] = pairs[l];
    const Eigen::MatrixXd G = antisym_unit(n, r, s);
    const Eigen::MatrixXd dOm = velocity_from_momentum(G, rot.lam);
    const Eigen::MatrixXd img =
        G * rot.Omega - rot.Omega * G + rot.M * dOm - dOm * rot.M;
    for (int k = 0; k < N; ++k) {
      D(k, l) = img(pairs[k].first, pairs[k].second);
    }
  }
  return D;
}

Eigen::MatrixXd tangent_space(const StationaryRotation& rot,
                              const Tolerances& tol) {
  const int N = rot.body.n * (rot.body.n - 1) / 2;
  const int want = N - generic_kernel_dim(rot);
  double lmin = rot.body.eigenvalues.front();
  double alpha = -0.5 * lmin * lmin;
  for (int attempt = 0; attempt < 8; ++attempt) {
    // real parameter and real momentum give a real tensor
    const Eigen::MatrixXd T =
        pencil_tensor(rot.M, rot.lam, PencilParameter::finite(alpha)).real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int r = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
      for (int k = 0; k < sv.size(); ++k) {
        if (sv(k) > tol.rank_tol * sv(0)) ++r;
      }
    }
    if (r == want) {
      return svd.matrixU().leftCols(r);
    }
    alpha = alpha * 1.37 - 0.1;
  }
  throw Error(ErrorCode::BadParameters,
              "could not find a regular parameter for the leaf tangent space");
}

SpectrumComparison compare_spectra(const StationaryRotation& rot,
                                   const Tolerances& tol) {
  SpectrumComparison cmp;
  cmp.detail = linearized_spectrum_formula(rot, tol);
  cmp.formula = cmp.detail.multiset;

  const Eigen::MatrixXd U = tangent_space(rot, tol);
  const Eigen::MatrixXd D = linearize_exact(rot);
  const Eigen::MatrixXd DU = D * U;
  const Eigen::MatrixXd R = U.transpose() * DU;
  cmp.tangent_dim = static_cast<int>(U.cols());
  cmp.zero_modes = static_cast<int>(U.rows()) - cmp.tangent_dim;
  const double du_norm = DU.norm();
  cmp.invariance_defect =
      du_norm > 0.0 ? (DU - U * R).norm() / du_norm : 0.0;

  Eigen::EigenSolver<Eigen::MatrixXd> es(R);
  for (int k = 0; k < R.rows(); ++k) {
    cmp.oracle.push_back(es.eigenvalues()(k));
  }

  if (cmp.formula.size() != cmp.oracle.size()) {
    std::ostringstream os;
    os << "closed-form spectrum has " << cmp.formula.size()
       << " entries but the tangent space has dimension " << cmp.oracle.size();
    throw Error(ErrorCode::BadDimensions, os.str());
  }
  const MatchingResult match = match_multisets(cmp.formula, cmp.oracle);
  cmp.max_mismatch = match.max_cost;
  return cmp;
}

}  // namespace rigidstab
