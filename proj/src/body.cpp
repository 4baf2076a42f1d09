#include "rigidstab/body.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace rigidstab {

BodySpec validate_body(const std::vector<double>& eigenvalues,
                       const Tolerances& tol) {
  if (eigenvalues.size() < 2) {
    throw Error(ErrorCode::BadDimensions, "body needs at least two axes");
  }
  BodySpec body;
  body.eigenvalues = eigenvalues;
  std::sort(body.eigenvalues.begin(), body.eigenvalues.end());
  body.n = static_cast<int>(body.eigenvalues.size());
  for (double e : body.eigenvalues) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      std::ostringstream os;
      os << "mass tensor eigenvalues must be positive and finite, got " << e;
      throw Error(ErrorCode::NonPositiveEigenvalue, os.str());
    }
  }
  for (int i = 0; i + 1 < body.n; ++i) {
    const double a = body.eigenvalues[i];
    const double b = body.eigenvalues[i + 1];
    if (b - a <= tol.asymmetry_tol * std::max(a, b)) {
      std::ostringstream os;
      os << "mass tensor eigenvalues " << a << " and " << b
         << " are not distinct at relative tolerance " << tol.asymmetry_tol;
      throw Error(ErrorCode::DegenerateBody, os.str());
    }
  }
  return body;
}

StationaryRotation build_stationary(const BodySpec& body,
                                    const RotationSpec& spec,
                                    const Tolerances& tol) {
  const int n = body.n;
  StationaryRotation rot;
  rot.body = body;
  rot.spec = spec;
  rot.m = static_cast<int>(spec.planes.size());
  if (2 * rot.m > n) {
    throw Error(ErrorCode::BadDimensions, "more rotation planes than axis pairs");
  }

  std::set<int> used;
  for (const PlaneSpec& pl : spec.planes) {
    for (int a : {pl.axis_a, pl.axis_b}) {
      if (a < 1 || a > n) {
        std::ostringstream os;
        os << "axis index " << a << " out of range 1.." << n;
        throw Error(ErrorCode::BadIndex, os.str());
      }
      if (!used.insert(a).second) {
        std::ostringstream os;
        os << "axis " << a << " appears in more than one plane";
        throw Error(ErrorCode::AxisReuse, os.str());
      }
    }
    if (pl.axis_a == pl.axis_b) {
      throw Error(ErrorCode::AxisReuse, "plane axes must differ");
    }
    if (pl.omega == 0.0 || !std::isfinite(pl.omega)) {
      throw Error(ErrorCode::ZeroAngularVelocity,
                  "plane angular velocity must be nonzero and finite");
    }
  }

  rot.lam.resize(n);
  rot.perm.resize(n);
  for (int k = 0; k < rot.m; ++k) {
    const PlaneSpec& pl = spec.planes[k];
    rot.perm[2 * k] = pl.axis_a;
    rot.perm[2 * k + 1] = pl.axis_b;
    rot.lam[2 * k] = body.eigenvalues[pl.axis_a - 1];
    rot.lam[2 * k + 1] = body.eigenvalues[pl.axis_b - 1];
    rot.omega.push_back(pl.omega);
    rot.momenta.push_back((rot.lam[2 * k] + rot.lam[2 * k + 1]) * pl.omega);
  }
  int slot = 2 * rot.m;
  for (int a = 1; a <= n; ++a) {
    if (!used.count(a)) {
      rot.perm[slot] = a;
      rot.lam[slot] = body.eigenvalues[a - 1];
      ++slot;
    }
  }

  rot.Omega = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < rot.m; ++k) {
    rot.Omega(2 * k, 2 * k + 1) = rot.omega[k];
    rot.Omega(2 * k + 1, 2 * k) = -rot.omega[k];
  }
  Eigen::MatrixXd J = Eigen::VectorXd::Map(rot.lam.data(), n).asDiagonal();
  rot.M = rot.Omega * J + J * rot.Omega;

  for (int i = 0; i < rot.m; ++i) {
    for (int j = i + 1; j < rot.m; ++j) {
      const double wi = std::abs(rot.omega[i]);
      const double wj = std::abs(rot.omega[j]);
      if (std::abs(wi - wj) <= tol.asymmetry_tol * std::max(wi, wj)) {
        std::ostringstream os;
        os << "planes " << i + 1 << " and " << j + 1
           << " spin with equal |omega|; instability conclusions for such "
              "rotations rest on a limiting argument and are reported with "
              "reduced confidence";
        rot.warnings.push_back(os.str());
      }
    }
  }
  return rot;
}

Eigen::MatrixXd velocity_from_momentum(const Eigen::MatrixXd& M,
                                       const std::vector<double>& lam) {
  const int n = static_cast<int>(lam.size());
  if (M.rows() != n || M.cols() != n) {
    throw Error(ErrorCode::BadDimensions, "momentum size does not match body");
  }
  Eigen::MatrixXd Om(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      Om(p, q) = M(p, q) / (lam[p] + lam[q]);
    }
  }
  return Om;
}

bool is_stationary(const Eigen::MatrixXd& M, const std::vector<double>& lam,
                   double rel_tol) {
  const Eigen::MatrixXd Om = velocity_from_momentum(M, lam);
  const Eigen::MatrixXd C = M * Om - Om * M;
  const double scale = M.norm() * M.norm();
  return C.norm() <= rel_tol * std::max(scale, 1e-300);
}

}  // namespace rigidstab
