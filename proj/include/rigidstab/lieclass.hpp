#pragma once

#include <string>
#include <vector>

#include "rigidstab/body.hpp"
#include "rigidstab/pencil.hpp"
#include "rigidstab/types.hpp"

namespace rigidstab {

// Intersection point of the diagram at a fixed abscissa: the planes whose
// parabolas pass through it, with vertex positions split left/right.
struct DiagramPoint {
  std::complex<double> ordinate{0.0, 0.0};
  std::vector<int> planes;  // 0-based, ascending
  bool upper = false;       // real parameters only
  int vertices_left = 0;
  int vertices_right = 0;
};

struct CombinatoricsAt {
  PencilParameter lambda;
  bool on_line = false;   // a vertical line sits exactly at the abscissa
  int lines_left = 0;
  int lines_right = 0;
  int lines_total = 0;
  std::vector<DiagramPoint> points;
};

// Groups the planes by coincidence of their parabola value at the given
// abscissa (leading coefficients at infinity). Grouping uses the same
// degeneracy test as the interaction blocks, so the clusters are exactly
// the intersection points. Clusters of one plane count as points only on
// a vertical line, where every parabola crosses it.
CombinatoricsAt combinatorics_at(const StationaryRotation& rot,
                                 const PencilParameter& lambda,
                                 const Tolerances& tol = {});

struct LieFactor {
  std::string name;  // canonical, e.g. "u(1,2)", "so(3)", "gl(2,R) (+) R^4"
  int dim = 0;       // over the base field of the case
};

struct LieClassification {
  PencilParameter lambda;
  bool complex_case = false;  // factors and residual are complex
  std::vector<LieFactor> factors;
  int residual_dim = 0;  // abelian summand R^N (C^N in the complex case)
  int total_dim = 0;     // dimension of the stabilizer at this parameter
  std::string canonical;
};

// Isomorphism class of the stabilizer subalgebra at the given parameter,
// assembled from the diagram combinatorics:
//   real, off the lines:  so(l,r) + sum_upper u(l_z,r_z) + sum_lower gl(n_z,R)
//   real, on a line:      the same factors extended semidirectly by their
//                         standard modules (R^k, C^k, and R^2k resp.)
//   infinity:             so(v) + sum u(n_z)
//   complex:              so(v,C) + sum gl(n_z,C)
// plus an abelian residue whose dimension is fixed by the stabilizer size.
LieClassification classify_g_lambda(const StationaryRotation& rot,
                                    const PencilParameter& lambda,
                                    const Tolerances& tol = {});

// Classification at every distinct intersection abscissa and at infinity.
std::vector<LieClassification> classify_spectrum(const StationaryRotation& rot,
                                                 const Tolerances& tol = {});

}  // namespace rigidstab
