#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "rigidstab/dynamics.hpp"

using namespace rigidstab;

namespace {

Eigen::MatrixXd noise(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      N(i, j) = g(rng);
      N(j, i) = -N(i, j);
    }
  return N / N.norm();
}

}  // namespace

TEST_CASE("vector field vanishes exactly at stationary rotations") {
  for (const StationaryRotation& rot :
       {fixtures::body3_long(), fixtures::body4_outer(0.5), fixtures::body5()}) {
    const double scale = rot.M.norm() * rot.M.norm();
    CHECK(vector_field(rot.M, rot.lam).norm() <= 1e-14 * scale);
  }

  // off equilibrium the field is the momentum commutator
  const StationaryRotation rot = fixtures::body5();
  const Eigen::MatrixXd M = rot.M + 0.3 * noise(5, 7);
  const Eigen::MatrixXd Om = velocity_from_momentum(M, rot.lam);
  CHECK((vector_field(M, rot.lam) - (M * Om - Om * M)).norm() == 0.0);
}

TEST_CASE("trace invariants are conserved along the flow") {
  const StationaryRotation rot = fixtures::body5();
  const Eigen::MatrixXd M0 = rot.M + 0.05 * rot.M.norm() * noise(5, 11);

  IntegrationOptions opt;
  opt.dt = 1e-3;
  opt.t_end = 10.0;
  const IntegrationResult res = integrate(M0, rot.lam, opt);
  CHECK(!res.guard_tripped);
  CHECK(res.t == doctest::Approx(10.0));

  CHECK((res.M + res.M.transpose()).norm() == 0.0);
  CHECK(invariant_drift(M0, res.M, rot.lam) < 1e-10);
  // the motion is genuinely nontrivial
  CHECK((res.M - M0).norm() > 1e-3 * M0.norm());
}

TEST_CASE("integration error drops fourth order in the step size") {
  const StationaryRotation rot = fixtures::body4_outer(4.0);
  const Eigen::MatrixXd M0 = rot.M + 0.3 * rot.M.norm() * noise(4, 3);

  const auto drift_at = [&](double dt) {
    IntegrationOptions opt;
    opt.dt = dt;
    opt.t_end = 2.0;
    return invariant_drift(M0, integrate(M0, rot.lam, opt).M, rot.lam);
  };
  const double coarse = drift_at(4e-3);
  const double fine = drift_at(2e-3);
  CHECK(coarse > 1e-13);  // above rounding noise, so the ratio is meaningful
  CHECK(coarse / fine >= 8.0);
}

TEST_CASE("stationary rotations stay put") {
  for (const StationaryRotation& rot :
       {fixtures::body3_middle(), fixtures::body4_equal_momenta()}) {
    IntegrationOptions opt;
    opt.dt = 1e-3;
    opt.t_end = 5.0;
    const IntegrationResult res = integrate(rot.M, rot.lam, opt);
    CHECK((res.M - rot.M).norm() <= 1e-10 * rot.M.norm());
  }
}

TEST_CASE("observer stride and early stop") {
  const StationaryRotation rot = fixtures::body3_long();
  IntegrationOptions opt;
  opt.dt = 1e-3;
  opt.t_end = 0.1;
  opt.observer_stride = 10;

  int calls = 0;
  IntegrationResult res = integrate(rot.M, rot.lam, opt,
                                    [&](double, const Eigen::MatrixXd&) {
                                      ++calls;
                                      return true;
                                    });
  CHECK(calls == 11);  // initial state plus every tenth of 100 steps
  CHECK(res.steps == 100);
  CHECK(!res.stopped_by_observer);

  calls = 0;
  res = integrate(rot.M, rot.lam, opt, [&](double, const Eigen::MatrixXd&) {
    return ++calls < 3;
  });
  CHECK(res.stopped_by_observer);
  CHECK(res.steps == 20);
}

TEST_CASE("norm guard halts numerical blowup") {
  const StationaryRotation rot = fixtures::body4_outer(1.0);
  const Eigen::MatrixXd M0 = rot.M + 0.1 * rot.M.norm() * noise(4, 5);
  IntegrationOptions opt;
  opt.dt = 10.0;  // far beyond the stability region
  opt.t_end = 1000.0;
  const IntegrationResult res = integrate(M0, rot.lam, opt);
  CHECK(res.guard_tripped);
  CHECK(res.t < 1000.0);
}

TEST_CASE("perturbation probe measures the unstable growth rate") {
  // middle-axis spin of the (1,2,3) body: the classical growth rate is
  // 1/sqrt(15) for unit angular velocity
  ProbeOptions opt;
  opt.epsilon = 1e-7;
  opt.dt = 1e-3;
  opt.t_max = 50.0;
  opt.trials = 3;
  opt.seed = 20240601;
  const ProbeResult res = perturbation_probe(fixtures::body3_middle(), opt);

  const double expected = 1.0 / std::sqrt(15.0);
  CHECK(res.escaped);
  CHECK(res.growth_rate == doctest::Approx(expected).epsilon(0.05));
  for (const ProbeTrial& t : res.trials) {
    CHECK(t.escaped);
    CHECK(t.window_samples > 100);
    CHECK(t.growth_rate == doctest::Approx(expected).epsilon(0.05));
  }
}

TEST_CASE("perturbation probe stays bounded at stable rotations") {
  ProbeOptions opt;
  opt.epsilon = 1e-7;
  opt.dt = 1e-3;
  opt.t_max = 30.0;
  opt.trials = 3;
  opt.seed = 99;
  for (const StationaryRotation& rot :
       {fixtures::body3_long(), fixtures::body3_short()}) {
    const ProbeResult res = perturbation_probe(rot, opt);
    CHECK(!res.escaped);
    CHECK(res.max_deviation < 10.0 * opt.epsilon);
    CHECK(res.growth_rate == 0.0);  // the deviation never enters the window
  }
}

TEST_CASE("perturbation probe is deterministic for a fixed seed") {
  ProbeOptions opt;
  opt.epsilon = 1e-6;
  opt.dt = 2e-3;
  opt.t_max = 20.0;
  opt.trials = 2;
  opt.seed = 4242;
  const ProbeResult a = perturbation_probe(fixtures::body3_middle(), opt);
  const ProbeResult b = perturbation_probe(fixtures::body3_middle(), opt);
  CHECK(a.growth_rate == b.growth_rate);
  CHECK(a.max_deviation == b.max_deviation);
  CHECK(a.trials.size() == b.trials.size());
}
