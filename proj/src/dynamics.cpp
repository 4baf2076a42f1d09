#include "rigidstab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rigidstab/linalg.hpp"

namespace rigidstab {

Eigen::MatrixXd vector_field(const Eigen::MatrixXd& M,
                             const std::vector<double>& lam) {
  const Eigen::MatrixXd Om = velocity_from_momentum(M, lam);
  return M * Om - Om * M;
}

IntegrationResult integrate(const Eigen::MatrixXd& M0,
                            const std::vector<double>& lam,
                            const IntegrationOptions& opt,
                            const Observer& observe) {
  IntegrationResult out;
  out.M = 0.5 * (M0 - M0.transpose());

  const long total = std::lround(opt.t_end / opt.dt);
  const int stride = std::max(1, opt.observer_stride);
  if (observe && !observe(0.0, out.M)) {
    out.stopped_by_observer = true;
    return out;
  }

  Eigen::MatrixXd k1, k2, k3, k4;
  for (long s = 0; s < total; ++s) {
    const double h = opt.dt;
    k1 = vector_field(out.M, lam);
    k2 = vector_field(out.M + 0.5 * h * k1, lam);
    k3 = vector_field(out.M + 0.5 * h * k2, lam);
    k4 = vector_field(out.M + h * k3, lam);
    out.M += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.M = 0.5 * (out.M - out.M.transpose()).eval();
    ++out.steps;
    out.t = static_cast<double>(out.steps) * opt.dt;

    if (!out.M.allFinite() || out.M.norm() > opt.norm_guard) {
      out.guard_tripped = true;
      if (observe) observe(out.t, out.M);
      return out;
    }
    if (observe && (out.steps % stride == 0 || s + 1 == total)) {
      if (!observe(out.t, out.M)) {
        out.stopped_by_observer = true;
        return out;
      }
    }
  }
  return out;
}

std::vector<double> trace_invariants(const Eigen::MatrixXd& M,
                                     const std::vector<double>& lam) {
  const int n = M.rows();
  Eigen::MatrixXd J2 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) J2(i, i) = lam[i] * lam[i];
  const double top = *std::max_element(lam.begin(), lam.end());

  std::vector<double> out;
  for (double c : {0.0, 1.0, top * top + 1.0}) {
    const Eigen::MatrixXd A = M + c * J2;
    const Eigen::MatrixXd A2 = A * A;
    out.push_back(A2.trace());
    out.push_back((A2 * A2).trace());
  }
  return out;
}

double invariant_drift(const Eigen::MatrixXd& M0, const Eigen::MatrixXd& M1,
                       const std::vector<double>& lam) {
  const std::vector<double> a = trace_invariants(M0, lam);
  const std::vector<double> b = trace_invariants(M1, lam);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::abs(b[k] - a[k]) / (1.0 + std::abs(a[k])));
  }
  return worst;
}

Eigen::MatrixXd random_antisymmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd N(n, n);
  for (int i = 0; i < n; ++i) {
    N(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double v = gauss(rng);
      N(i, j) = v;
      N(j, i) = -v;
    }
  }
  return N / N.norm();
}

namespace {

double fit_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return 0.0;
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (const auto& [t, y] : pts) {
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double k = static_cast<double>(pts.size());
  const double denom = k * stt - st * st;
  if (denom == 0.0) return 0.0;
  return (k * sty - st * sy) / denom;
}

}  // namespace

ProbeResult perturbation_probe(const StationaryRotation& rot,
                               const ProbeOptions& opt) {
  ProbeResult out;
  const double scale = rot.M.norm();
  const double lo = 10.0 * opt.epsilon;
  const double hi = 1e3 * opt.epsilon;

  out.trials.resize(std::max(0, opt.trials));
  parallel_for(static_cast<int>(out.trials.size()), opt.jobs, [&](int trial) {
    std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(trial));
    const Eigen::MatrixXd N = random_antisymmetric(rot.body.n, rng);
    const Eigen::MatrixXd M0 = rot.M + opt.epsilon * scale * N;

    ProbeTrial tr;
    std::vector<std::pair<double, double>> window;
    IntegrationOptions iopt;
    iopt.dt = opt.dt;
    iopt.t_end = opt.t_max;
    iopt.observer_stride =
        static_cast<int>(std::max<long>(1, std::lround(0.01 / opt.dt)));

    integrate(M0, rot.lam, iopt, [&](double t, const Eigen::MatrixXd& M) {
      const double dev = (M - rot.M).norm() / scale;
      tr.max_deviation = std::max(tr.max_deviation, dev);
      tr.t_end = t;
      if (dev >= lo && dev <= hi) window.emplace_back(t, std::log(dev));
      if (dev > hi) {
        tr.escaped = true;
        return false;
      }
      return true;
    });

    tr.window_samples = static_cast<int>(window.size());
    tr.growth_rate = fit_slope(window);
    out.trials[trial] = std::move(tr);
  });

  std::vector<double> rates;
  for (const ProbeTrial& t : out.trials) {
    rates.push_back(t.growth_rate);
    out.max_deviation = std::max(out.max_deviation, t.max_deviation);
    out.escaped = out.escaped || t.escaped;
  }
  std::sort(rates.begin(), rates.end());
  if (!rates.empty()) {
    const std::size_t k = rates.size();
    out.growth_rate = (k % 2) ? rates[k / 2]
                              : 0.5 * (rates[k / 2 - 1] + rates[k / 2]);
  }
  return out;
}

}  // namespace rigidstab
