#pragma once

#include <cmath>

#include "rigidstab/body.hpp"

// canonical rotations used across the test suites
namespace fixtures {

using rigidstab::BodySpec;
using rigidstab::PlaneSpec;
using rigidstab::RotationSpec;
using rigidstab::StationaryRotation;

inline StationaryRotation make(const std::vector<double>& eigs,
                               const std::vector<PlaneSpec>& planes) {
  const BodySpec body = rigidstab::validate_body(eigs);
  RotationSpec spec;
  spec.planes = planes;
  return rigidstab::build_stationary(body, spec);
}

// three-dimensional body (1,2,3); plane (a,b) spins, the third axis is fixed
inline StationaryRotation body3_long() { return make({1, 2, 3}, {{1, 2, 1.0}}); }
inline StationaryRotation body3_middle() { return make({1, 2, 3}, {{1, 3, 1.0}}); }
inline StationaryRotation body3_short() { return make({1, 2, 3}, {{2, 3, 1.0}}); }

// four-dimensional body (1,2,3,4), outer/inner pairing (e1,e4),(e2,e3);
// the verdict depends on the angular velocity ratio
inline StationaryRotation body4_outer(double w1, double w2 = 1.0) {
  return make({1, 2, 3, 4}, {{1, 4, w1}, {2, 3, w2}});
}

// interleaved pairing (e1,e3),(e2,e4), unstable for all velocities
inline StationaryRotation body4_crossed(double w1 = 1.0, double w2 = 0.8) {
  return make({1, 2, 3, 4}, {{1, 3, w1}, {2, 4, w2}});
}

// adjacent pairing (e1,e2),(e3,e4)
inline StationaryRotation body4_adjacent(double w1, double w2) {
  return make({1, 2, 3, 4}, {{1, 2, w1}, {3, 4, w2}});
}

// equal plane momenta (21, 21): the parabolas meet at infinity
inline StationaryRotation body4_equal_momenta() {
  return body4_adjacent(7.0, 3.0);
}

// velocity ratio at which the outer pairing's intersections collide:
// tangency of the two parabolas (double root near x = -16.225)
inline double outer_tangent_ratio() {
  return (117.0 - 8.0 * std::sqrt(126.0)) / 25.0;
}

inline StationaryRotation body4_tangent() {
  return body4_outer(std::sqrt(outer_tangent_ratio()));
}

// five-dimensional: two planes and one fixed axis
inline StationaryRotation body5(double w1 = 1.0, double w2 = 0.7) {
  return make({1, 2, 3, 4, 5}, {{2, 3, w1}, {4, 5, w2}});
}

// six-dimensional, adjacent pairing, velocities tuned so that all three
// parabolas pass through (x_star, 1); needs x_star outside the squared
// eigenvalue gaps of every plane
inline StationaryRotation body6_triple(double x_star) {
  std::vector<PlaneSpec> planes;
  for (int k = 0; k < 3; ++k) {
    const double a = 2 * k + 1, b = 2 * k + 2;
    const double m2 = (x_star - a * a) * (x_star - b * b);
    planes.push_back({2 * k + 1, 2 * k + 2, std::sqrt(m2) / (a + b)});
  }
  return make({1, 2, 3, 4, 5, 6}, planes);
}

// six-dimensional with two fixed axes (vertical lines at 25 and 36)
inline StationaryRotation body6_two_axes(double w1 = 1.0, double w2 = 0.8) {
  return make({1, 2, 3, 4, 5, 6}, {{1, 2, w1}, {3, 4, w2}});
}

}  // namespace fixtures
