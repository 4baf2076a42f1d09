#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rigidstab/types.hpp"

namespace rigidstab {

// Mass tensor of an n-dimensional rigid body: positive, pairwise distinct
// eigenvalues, kept sorted ascending. User-facing axis indices (1-based)
// refer to this sorted order.
struct BodySpec {
  std::vector<double> eigenvalues;
  int n = 0;
};

// One invariant plane of a stationary rotation: the span of two principal
// axes, spinning at angular velocity omega.
struct PlaneSpec {
  int axis_a = 0;  // 1-based axis indices into BodySpec::eigenvalues
  int axis_b = 0;
  double omega = 0.0;
};

struct RotationSpec {
  std::vector<PlaneSpec> planes;
};

// A stationary rotation in an adapted basis: plane k occupies slots
// (2k, 2k+1), fixed axes fill the tail. `perm[slot]` maps a slot back to the
// 1-based user axis, `lam` carries the eigenvalues in slot order.
struct StationaryRotation {
  BodySpec body;
  RotationSpec spec;
  int m = 0;                      // number of rotation planes
  std::vector<double> lam;        // eigenvalues in slot order
  std::vector<int> perm;          // slot -> 1-based user axis
  std::vector<double> omega;      // per-plane angular velocity
  std::vector<double> momenta;    // per-plane momentum (lam_a + lam_b) * omega
  Eigen::MatrixXd Omega;          // angular velocity, slot basis
  Eigen::MatrixXd M;              // angular momentum, slot basis
  std::vector<std::string> warnings;

  int fixed_count() const { return body.n - 2 * m; }
};

// Validates eigenvalues (positive, pairwise distinct relative to
// tol.asymmetry_tol) and returns them sorted ascending.
BodySpec validate_body(const std::vector<double>& eigenvalues,
                       const Tolerances& tol = {});

// Assembles the adapted-basis data for a stationary rotation. Axis indices
// must be in range and pairwise disjoint, angular velocities nonzero.
StationaryRotation build_stationary(const BodySpec& body,
                                    const RotationSpec& spec,
                                    const Tolerances& tol = {});

// Angular velocity solving M = Omega J + J Omega entrywise,
// Omega_pq = M_pq / (lam_p + lam_q). `lam` lists eigenvalues in the basis
// M is written in.
Eigen::MatrixXd velocity_from_momentum(const Eigen::MatrixXd& M,
                                       const std::vector<double>& lam);

// True when [M, Omega(M)] vanishes relative to |M|^2.
bool is_stationary(const Eigen::MatrixXd& M, const std::vector<double>& lam,
                   double rel_tol = 1e-12);

}  // namespace rigidstab
