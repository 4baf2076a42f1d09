#pragma once

#include <complex>
#include <vector>

#include "rigidstab/body.hpp"
#include "rigidstab/diagram.hpp"
#include "rigidstab/types.hpp"

namespace rigidstab {

// Matrix of ad_lambda X on the kernel of a degenerate plane-pair block in
// the kernel coordinates (alpha, beta); x holds the in-plane coefficients
// of the block-diagonal element X.
Eigen::Matrix2cd adjoint_matrix_pair(const StationaryRotation& rot,
                                     const PencilParameter& lambda, int i, int j,
                                     const std::vector<std::complex<double>>& x);

// Same for the plane-axis space of plane i and fixed slot s (degenerate
// exactly at lambda = lam_s^2).
Eigen::Matrix2cd adjoint_matrix_axis(const StationaryRotation& rot,
                                     const PencilParameter& lambda, int i, int s,
                                     const std::vector<std::complex<double>>& x);

// Eigenvalue pairs +-nu of the blocks above:
//   pair: nu = sqrt(-chi_i(lambda)) (m_j x_j - m_i x_i)
//   axis: mu = sqrt(-chi_i(lambda)) m_i x_i
std::complex<double> adjoint_eigenvalue_pair(const StationaryRotation& rot,
                                             const PencilParameter& lambda,
                                             int i, int j,
                                             const std::vector<std::complex<double>>& x);
std::complex<double> adjoint_eigenvalue_axis(const StationaryRotation& rot,
                                             const PencilParameter& lambda,
                                             int i, int s,
                                             const std::vector<std::complex<double>>& x);

struct SpectrumEntry {
  enum class Source { PlanePair, PlaneAxis };
  Source source = Source::PlanePair;
  int i = 0;              // plane index (0-based)
  int j = 0;              // second plane, or fixed slot for PlaneAxis
  PencilParameter root;   // degeneracy parameter the term comes from
  std::complex<double> sigma;  // one of the +- pair
  int multiplicity = 1;   // 2 on tangent roots
  // true when the closed form of the contribution vanishes identically,
  // which can only happen for planes with equal squared angular velocity
  bool degenerate = false;
};

struct FormulaSpectrum {
  std::vector<SpectrumEntry> entries;
  std::vector<std::complex<double>> multiset;  // +-sigma, multiplicity expanded
};

// Eigenvalues of the linearized flow on the leaf tangent space, assembled
// per intersection from closed forms:
//   finite root:   sigma = (g_i - g_j) / sqrt(-chi_i(root)),
//                  g_i = (root + lam_{2i} lam_{2i+1}) / (lam_{2i} + lam_{2i+1})
//   infinite root: sigma = sqrt(-chi_i(inf)) (m_j w_j - m_i w_i)
//   fixed axis:    tau = (lam_s - lam_{2i})(lam_s - lam_{2i+1}) /
//                        ((lam_{2i} + lam_{2i+1}) sqrt(-chi_i(lam_s^2)))
FormulaSpectrum linearized_spectrum_formula(const StationaryRotation& rot,
                                            const Tolerances& tol = {});

// True when g_i == g_j at the root (at classification tolerance), the only
// way a finite root contributes a vanishing sigma.
bool exotic_condition_check(const StationaryRotation& rot, int i, int j,
                            double root, const Tolerances& tol = {});

// Exact linearization of dM/dt = [M, Omega(M)] at the stationary rotation,
// in the orthonormal antisymmetric basis (elementary matrices / sqrt(2)).
Eigen::MatrixXd linearize_exact(const StationaryRotation& rot);

// Orthonormal basis (columns) of the leaf tangent space: the column space
// of the bracket tensor at a generic real parameter. The parameter starts
// at -lam_min^2/2 and is nudged deterministically if the rank comes out
// below the generic value.
Eigen::MatrixXd tangent_space(const StationaryRotation& rot,
                              const Tolerances& tol = {});

struct SpectrumComparison {
  std::vector<std::complex<double>> formula;
  std::vector<std::complex<double>> oracle;
  double max_mismatch = 0.0;
  int tangent_dim = 0;    // dim of the leaf tangent space
  int zero_modes = 0;     // ambient dim minus tangent dim
  double invariance_defect = 0.0;  // |(I - UU^T) D U| / |D U|
  FormulaSpectrum detail;
};

// Closed-form spectrum against the dense eigensolver on the exact
// linearization restricted to the leaf tangent space, matched as multisets.
SpectrumComparison compare_spectra(const StationaryRotation& rot,
                                   const Tolerances& tol = {});

}  // namespace rigidstab
