#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "rigidstab/body.hpp"
#include "rigidstab/diagram.hpp"
#include "rigidstab/linalg.hpp"
#include "rigidstab/types.hpp"

namespace rigidstab {

// Twisted matrix bracket [X, Y]_lambda = X A Y - Y A X with
// A = J^2 - lambda E for finite lambda and A = E at infinity.
Eigen::MatrixXcd bracket_lambda(const Eigen::MatrixXcd& X,
                                const Eigen::MatrixXcd& Y,
                                const std::vector<double>& lam,
                                const PencilParameter& lambda);

// Pairing of the momentum with a twisted commutator,
// <M, [X, Y]_lambda> under <U, V> = Tr(U^T V).
std::complex<double> poisson_eval(const Eigen::MatrixXd& M,
                                  const std::vector<double>& lam,
                                  const PencilParameter& lambda,
                                  const Eigen::MatrixXcd& X,
                                  const Eigen::MatrixXcd& Y);

// Gram matrix of the bracket at M in the elementary antisymmetric basis
// (antisym_index_pairs order). Antisymmetric, N x N with N = n(n-1)/2.
Eigen::MatrixXcd pencil_tensor(const Eigen::MatrixXd& M,
                               const std::vector<double>& lam,
                               const PencilParameter& lambda);

// Diagonal scalars a_k = lam_k^2 - lambda (1 at infinity) in slot order.
std::vector<std::complex<double>> pencil_scalars(const std::vector<double>& lam,
                                                 const PencilParameter& lambda);

// Basis of the common kernel K: one in-plane generator per rotation plane
// plus the elementary generators of the fixed block.
std::vector<Eigen::MatrixXd> stabilizer_basis(const StationaryRotation& rot);

// The m in-plane generators only (the center of K when the fixed block is
// not two-dimensional).
std::vector<Eigen::MatrixXd> center_basis(const StationaryRotation& rot);

// Embeds a 2x2 matrix into the interaction space of planes i < j
// (rows/cols 2i,2i+1 x 2j,2j+1 in slot order, antisymmetric completion).
Eigen::MatrixXcd embed_plane_pair(int n, int i, int j,
                                  const Eigen::Matrix2cd& X);
Eigen::Matrix2cd extract_plane_pair(const Eigen::MatrixXcd& X, int i, int j);

// Embeds a 2-vector into the interaction space of plane i with a fixed
// slot s (s >= 2m).
Eigen::MatrixXcd embed_plane_axis(int n, int i, int s,
                                  const Eigen::Vector2cd& v);
Eigen::Vector2cd extract_plane_axis(const Eigen::MatrixXcd& X, int i, int s);

// Block-diagonal element of the stabilizer center with prescribed in-plane
// coefficients x (one per plane).
Eigen::MatrixXcd block_diag_element(int n, const std::vector<std::complex<double>>& x);

// Gram of the bracket restricted to the plane-pair space, in the entry
// basis (a, b; c, d) of the 2x2 identification.
Eigen::Matrix4cd restrict_pair_block(const StationaryRotation& rot,
                                     const PencilParameter& lambda, int i, int j);

// Gram of the bracket restricted to the plane-axis space of plane i and
// fixed slot s, natural R^2 basis.
Eigen::Matrix2cd restrict_axis_block(const StationaryRotation& rot,
                                     const PencilParameter& lambda, int i, int s);

// m_j^2 a_{2i} a_{2i+1} - m_i^2 a_{2j} a_{2j+1} in slot order (0-based):
// the pair block is degenerate exactly when this vanishes.
std::complex<double> pair_block_det(const StationaryRotation& rot,
                                    const PencilParameter& lambda, int i, int j);
bool pair_block_degenerate(const StationaryRotation& rot,
                           const PencilParameter& lambda, int i, int j,
                           const Tolerances& tol);

// Plane pairs whose interaction block degenerates at lambda, and fixed
// slots whose squared eigenvalue equals lambda.
std::vector<std::pair<int, int>> degenerate_pairs(const StationaryRotation& rot,
                                                  const PencilParameter& lambda,
                                                  const Tolerances& tol);
std::vector<int> line_slots_at(const StationaryRotation& rot,
                               const PencilParameter& lambda,
                               const Tolerances& tol);

// Two generators of the kernel of the degenerate pair block, embedded into
// antisymmetric n x n matrices. Throws NotDegenerate otherwise.
std::array<Eigen::MatrixXcd, 2> kernel_basis_pair(const StationaryRotation& rot,
                                                  const PencilParameter& lambda,
                                                  int i, int j,
                                                  const Tolerances& tol);

// dim K, the kernel dimension at generic parameters.
int generic_kernel_dim(const StationaryRotation& rot);

// Kernel dimension predicted at a parameter from block degeneracy counts.
int expected_kernel_dim(const StationaryRotation& rot,
                        const PencilParameter& lambda, const Tolerances& tol);

struct RankSample {
  PencilParameter where;
  int rank = 0;
  int kernel_dim = 0;
};

// Numerical rank of the pencil tensor at each sample.
std::vector<RankSample> rank_scan(const StationaryRotation& rot,
                                  const std::vector<PencilParameter>& samples,
                                  const Tolerances& tol);

// Value of the shifted quadratic Hamiltonian
//   -1/2 Tr((J + sqrt(lambda) E)^{-1} Omega(M) (J + sqrt(lambda) E)^{-1} M),
// and 1/2 Tr(Omega(M) M) at infinity. Principal square root branch.
std::complex<double> hamiltonian(const Eigen::MatrixXd& M,
                                 const std::vector<double>& lam,
                                 const PencilParameter& lambda);

// Trace-pairing gradient of the Hamiltonian above at a stationary rotation:
// block-diagonal with in-plane coefficients
//   x_i = -omega_i / ((lam_{2i} + sqrt(lambda))(lam_{2i+1} + sqrt(lambda))),
// and x_i = omega_i at infinity.
std::vector<std::complex<double>> gradient_block_coords(const StationaryRotation& rot,
                                                        const PencilParameter& lambda);
Eigen::MatrixXcd gradient_matrix(const StationaryRotation& rot,
                                 const PencilParameter& lambda);

// Symmetric polarization of the stability form induced by a stabilizer
// element X at a degenerate real parameter:
//   B_X(Y, Z) = 1/2 (<M,[[X,Y]_lambda, Z]> + <M,[[X,Z]_lambda, Y]>)
// with the bracket pairing at infinity.
std::complex<double> cocycle_eval(const Eigen::MatrixXd& M,
                                  const std::vector<double>& lam,
                                  const PencilParameter& lambda,
                                  const Eigen::MatrixXcd& X,
                                  const Eigen::MatrixXcd& Y,
                                  const Eigen::MatrixXcd& Z);

// Closed-form Gram of the stability form on the kernel modulo K at a real
// degenerate parameter, in the normalized kernel basis returned alongside.
struct CocycleForm {
  std::vector<Eigen::MatrixXcd> basis;  // unit Frobenius norm kernel elements
  Eigen::MatrixXd gram;
};
CocycleForm cocycle_form(const StationaryRotation& rot, double lambda,
                         const std::vector<double>& x, const Tolerances& tol);

struct CompactnessCertificate {
  PencilParameter lambda;
  bool applicable = false;
  bool compact = false;
  double min_eigenvalue = 0.0;
  double gram_norm = 0.0;
  std::vector<double> element;  // in-plane coefficients of the certifying X
  std::string note;
};

// Builds the certifying stabilizer element x_i = -m_i / b_i with
// b_i = a_{2i} + a_{2i+1} and tests positive definiteness of the stability
// form on the kernel modulo K. At infinity the underlying algebra is a
// subalgebra of a compact one and the certificate passes trivially.
CompactnessCertificate compactness_certificate(const StationaryRotation& rot,
                                               const PencilParameter& lambda,
                                               const Tolerances& tol);

struct DiagonalizabilityCheck {
  bool ok = true;
  std::vector<Intersection> tangencies;
};

// Semisimplicity proxy for the linearized operator: fails exactly on
// tangent intersections.
DiagonalizabilityCheck diagonalizability_check(const ParabolicDiagram& d);

// Conjugation intertwining the brackets at alpha and beta,
//   F(X) = (J^2-beta)^{-1/2} (J^2-alpha)^{1/2} X (J^2-alpha)^{1/2} (J^2-beta)^{-1/2},
// defined for alpha, beta below the smallest squared eigenvalue.
Eigen::MatrixXcd pencil_isomorphism(double alpha, double beta,
                                    const Eigen::MatrixXcd& X,
                                    const std::vector<double>& lam);

}  // namespace rigidstab
