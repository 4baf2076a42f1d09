#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "rigidstab/body.hpp"
#include "rigidstab/types.hpp"

namespace rigidstab {

// Free motion in momentum form, dM/dt = M Omega(M) - Omega(M) M.
Eigen::MatrixXd vector_field(const Eigen::MatrixXd& M,
                             const std::vector<double>& lam);

struct IntegrationOptions {
  double dt = 1e-3;
  double t_end = 10.0;
  double norm_guard = 1e12;  // abort once |M| exceeds this
  int observer_stride = 1;   // observer fires every stride-th step
};

// Return false to stop the integration early.
using Observer = std::function<bool(double, const Eigen::MatrixXd&)>;

struct IntegrationResult {
  Eigen::MatrixXd M;
  double t = 0.0;
  long steps = 0;
  bool guard_tripped = false;
  bool stopped_by_observer = false;
};

// Classical fourth-order Runge-Kutta, reprojecting onto antisymmetric
// matrices after every step. The observer also fires on the initial state
// and on the final one regardless of stride.
IntegrationResult integrate(const Eigen::MatrixXd& M0,
                            const std::vector<double>& lam,
                            const IntegrationOptions& opt,
                            const Observer& observe = {});

// Spectral first integrals from the shifted family M + c J^2:
// Tr (M + c J^2)^k for c in {0, 1, lam_max^2 + 1} and k in {2, 4}.
std::vector<double> trace_invariants(const Eigen::MatrixXd& M,
                                     const std::vector<double>& lam);

// max_k |I_k(M1) - I_k(M0)| / (1 + |I_k(M0)|)
double invariant_drift(const Eigen::MatrixXd& M0, const Eigen::MatrixXd& M1,
                       const std::vector<double>& lam);

// Unit-Frobenius-norm antisymmetric matrix with gaussian upper triangle.
Eigen::MatrixXd random_antisymmetric(int n, std::mt19937_64& rng);

struct ProbeOptions {
  double epsilon = 1e-7;  // perturbation size relative to |M0|
  double dt = 1e-3;
  double t_max = 50.0;
  int trials = 4;
  std::uint64_t seed = 12345;
  int jobs = 1;  // trials are independent; results are merged by index
};

struct ProbeTrial {
  double growth_rate = 0.0;   // log-deviation slope over the fit window
  double max_deviation = 0.0; // relative to |M0|
  bool escaped = false;       // deviation crossed 1000 epsilon
  double t_end = 0.0;
  int window_samples = 0;
};

struct ProbeResult {
  std::vector<ProbeTrial> trials;
  double growth_rate = 0.0;    // median over trials
  double max_deviation = 0.0;  // worst over trials
  bool escaped = false;        // any trial escaped
};

// Kicks the stationary momentum with random antisymmetric noise of relative
// size epsilon and integrates. The deviation from the equilibrium is fitted
// exponentially while it sits between 10 and 1000 epsilon; trajectories are
// cut off once they leave that window, where the linearization stops being
// meaningful. Deterministic for a fixed seed.
ProbeResult perturbation_probe(const StationaryRotation& rot,
                               const ProbeOptions& opt = {});

}  // namespace rigidstab
