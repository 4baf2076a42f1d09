#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "rigidstab/types.hpp"

namespace rigidstab {

// Index pairs (p, q), p < q, enumerating the elementary antisymmetric
// matrices E_pq - E_qp in a fixed row-major order.
std::vector<std::pair<int, int>> antisym_index_pairs(int n);

// Elementary antisymmetric matrix for one index pair.
Eigen::MatrixXd antisym_unit(int n, int p, int q);

// Coordinates of an antisymmetric matrix in the E_pq - E_qp basis (its
// strict upper triangle, row-major) and the inverse embedding.
Eigen::VectorXcd so_coordinates(const Eigen::MatrixXcd& X);
Eigen::MatrixXcd so_embed(int n, const Eigen::VectorXcd& coords);

// Frobenius norm of the commutator-style antisymmetry defect |X + X^T|.
double antisymmetry_defect(const Eigen::MatrixXd& X);

// Number of singular values above rel_tol * sigma_max.
int numerical_rank(const Eigen::MatrixXcd& A, double rel_tol);

// Orthonormal basis (columns) of the column space of A at the same
// singular-value cutoff.
Eigen::MatrixXcd column_space(const Eigen::MatrixXcd& A, double rel_tol);

// Largest principal angle (radians) between two subspaces given by
// orthonormal columns. Dimensions must agree.
double max_principal_angle(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V);

// Minimal-cost perfect matching between two equally sized lists of complex
// numbers, cost |a_i - b_j|. Returns the matched cost per pair, and the
// permutation taking list a indices to list b indices.
struct MatchingResult {
  std::vector<int> assignment;  // a[i] pairs with b[assignment[i]]
  double max_cost = 0.0;
  double total_cost = 0.0;
};
MatchingResult match_multisets(const std::vector<std::complex<double>>& a,
                               const std::vector<std::complex<double>>& b);

// Evaluates fn(i) for i in [0, count) on up to `jobs` threads. Results are
// written by index, so the output order is deterministic regardless of the
// thread schedule.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

}  // namespace rigidstab
