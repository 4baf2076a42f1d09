#include "rigidstab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "rigidstab/config.hpp"
#include "rigidstab/diagram.hpp"
#include "rigidstab/dynamics.hpp"
#include "rigidstab/json_io.hpp"
#include "rigidstab/lieclass.hpp"
#include "rigidstab/linalg.hpp"
#include "rigidstab/pencil.hpp"
#include "rigidstab/report.hpp"
#include "rigidstab/spectrum.hpp"
#include "rigidstab/svg.hpp"

namespace rigidstab {

namespace {

struct Common {
  std::string config_path;
  std::string out_dir;
  bool svg_flag = true;
  std::uint64_t seed = 0;
  bool quiet = false;
  int jobs = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));

  // sweep only
  int plane = 1;
  double sweep_min = 0.0;
  double sweep_max = 0.0;
  int steps = 41;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON config file")->required();
  sub->add_option("--out", c.out_dir,
                  "output directory (default: output.dir from the config)");
  sub->add_flag("--svg,!--no-svg", c.svg_flag, "write the diagram SVG");
  sub->add_option("--seed", c.seed, "override the probe seed");
  sub->add_flag("--quiet", c.quiet, "only print errors");
  sub->add_option("--jobs", c.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
}

int verdict_exit(Stability s) {
  switch (s) {
    case Stability::Stable: return 0;
    case Stability::Unstable: return 10;
    case Stability::InconclusiveTangency: return 20;
  }
  return 2;
}

std::string out_path(const RunConfig& cfg, const char* name) {
  return (std::filesystem::path(cfg.output.dir) / name).string();
}

std::string parameter_text(const PencilParameter& p) {
  if (p.infinite) return "inf";
  std::ostringstream os;
  os.precision(10);
  os << p.value.real();
  if (p.value.imag() != 0.0) {
    os << (p.value.imag() < 0 ? " - " : " + ") << std::abs(p.value.imag())
       << "i";
  }
  return os.str();
}

int cmd_analyze(const Common& c, const RunConfig& cfg) {
  const StationaryRotation rot = rotation_from_config(cfg);
  AnalysisReport rep = analyze(rot, cfg.tol);
  rep.seed = cfg.probe.seed;
  write_text_file(out_path(cfg, "report.json"),
                  dump_deterministic(report_json(rep)));
  if (cfg.output.svg) {
    write_text_file(out_path(cfg, "diagram.svg"), render_svg(rep.diagram));
  }
  if (!c.quiet) {
    std::cout << "verdict: " << to_string(rep.verdict.status) << "\n";
    for (const auto& w : rep.verdict.witnesses) {
      std::cout << "  " << to_string(w.kind) << (w.tangent ? " tangent" : "")
                << " at x = " << parameter_text(w.abscissa) << "\n";
    }
    for (const auto& w : rep.warnings) std::cout << "  note: " << w << "\n";
    std::cout << "wrote " << out_path(cfg, "report.json") << "\n";
  }
  return verdict_exit(rep.verdict.status);
}

int cmd_spectrum(const Common& c, const RunConfig& cfg) {
  const StationaryRotation rot = rotation_from_config(cfg);
  const SpectrumComparison cmp = compare_spectra(rot, cfg.tol);
  double scale = 0.0;
  for (const auto& z : cmp.formula) scale = std::max(scale, std::abs(z));
  const double threshold = 1e-8 * (1.0 + scale);

  nlohmann::ordered_json j;
  j["schema"] = "rigidstab-spectrum/1";
  nlohmann::ordered_json formula = nlohmann::ordered_json::array();
  for (const auto& z : cmp.formula) formula.push_back(json_complex(z));
  nlohmann::ordered_json oracle = nlohmann::ordered_json::array();
  for (const auto& z : cmp.oracle) oracle.push_back(json_complex(z));
  j["formula"] = std::move(formula);
  j["oracle"] = std::move(oracle);
  j["max_mismatch"] = cmp.max_mismatch;
  j["threshold"] = threshold;
  j["tangent_dim"] = cmp.tangent_dim;
  j["zero_modes"] = cmp.zero_modes;
  j["invariance_defect"] = cmp.invariance_defect;
  write_text_file(out_path(cfg, "spectrum.json"), dump_deterministic(j));

  const bool ok = cmp.max_mismatch <= threshold;
  if (!c.quiet) {
    std::cout << "eigenvalues on the leaf tangent space: " << cmp.formula.size()
              << "\n";
    std::cout << "max formula-vs-oracle mismatch: " << cmp.max_mismatch
              << " (threshold " << threshold << ")\n";
    std::cout << (ok ? "match" : "MISMATCH") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_simulate(const Common& c, const RunConfig& cfg) {
  const StationaryRotation rot = rotation_from_config(cfg);
  Eigen::MatrixXd M0 = rot.M;
  if (cfg.kick > 0.0) {
    std::mt19937_64 rng(cfg.probe.seed);
    M0 += cfg.kick * rot.M.norm() *
          random_antisymmetric(rot.body.n, rng);
  }

  IntegrationOptions iopt = cfg.integrator;
  const long total = std::lround(iopt.t_end / iopt.dt);
  iopt.observer_stride = static_cast<int>(std::max<long>(1, total / 2000));

  std::vector<double> times;
  std::vector<Eigen::MatrixXd> states;
  const IntegrationResult res =
      integrate(M0, rot.lam, iopt, [&](double t, const Eigen::MatrixXd& M) {
        times.push_back(t);
        states.push_back(M);
        return true;
      });

  write_text_file(out_path(cfg, "trajectory.csv"),
                  trajectory_csv(times, states, rot.lam));

  double drift = 0.0;
  for (const auto& M : states) {
    drift = std::max(drift, invariant_drift(states.front(), M, rot.lam));
  }
  if (!c.quiet) {
    std::cout << "simulated t = " << res.t << " in " << res.steps
              << " steps, " << times.size() << " samples\n";
    std::cout << "max invariant drift: " << drift << "\n";
    std::cout << "wrote " << out_path(cfg, "trajectory.csv") << "\n";
  }
  if (res.guard_tripped) {
    std::cerr << "norm guard tripped at t = " << res.t << "\n";
    return 1;
  }
  return 0;
}

int cmd_probe(const Common& c, const RunConfig& cfg) {
  const StationaryRotation rot = rotation_from_config(cfg);
  const Verdict verdict = stability_verdict(build_diagram(rot, cfg.tol));
  ProbeOptions popt = cfg.probe;
  popt.jobs = c.jobs;
  const ProbeAssessment pa = assess_probe(rot, verdict, popt, cfg.tol);

  nlohmann::ordered_json j;
  j["schema"] = "rigidstab-probe/1";
  j["verdict"] = to_string(verdict.status);
  j["options"] = {{"epsilon", popt.epsilon}, {"dt", popt.dt},
                  {"t_max", popt.t_max},     {"trials", popt.trials},
                  {"seed", popt.seed}};
  j["predicted_rate"] =
      pa.rate_applicable ? nlohmann::ordered_json(pa.predicted_rate)
                         : nlohmann::ordered_json(nullptr);
  j["growth_rate"] = pa.result.growth_rate;
  j["max_deviation"] = pa.result.max_deviation;
  j["escaped"] = pa.result.escaped;
  nlohmann::ordered_json trials = nlohmann::ordered_json::array();
  for (const auto& t : pa.result.trials) {
    trials.push_back({{"growth_rate", t.growth_rate},
                      {"max_deviation", t.max_deviation},
                      {"escaped", t.escaped},
                      {"t_end", t.t_end},
                      {"window_samples", t.window_samples}});
  }
  j["trials"] = std::move(trials);
  j["consistent"] = pa.verdict_consistent;
  j["note"] = pa.note;
  write_text_file(out_path(cfg, "probe.json"), dump_deterministic(j));

  if (!c.quiet) {
    std::cout << "verdict: " << to_string(verdict.status) << "\n";
    std::cout << (pa.verdict_consistent ? "consistent: " : "CONTRADICTION: ")
              << pa.note << "\n";
  }
  return pa.verdict_consistent ? 0 : 1;
}

int cmd_classify(const Common& c, const RunConfig& cfg) {
  const StationaryRotation rot = rotation_from_config(cfg);
  const std::vector<LieClassification> classes =
      classify_spectrum(rot, cfg.tol);

  std::vector<PencilParameter> params;
  for (const auto& cls : classes) params.push_back(cls.lambda);
  const std::vector<RankSample> ranks = rank_scan(rot, params, cfg.tol);

  bool ok = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& cls = classes[k];
    const bool match = ranks[k].kernel_dim == cls.total_dim;
    ok = ok && match;
    nlohmann::ordered_json e;
    e["lambda"] = json_parameter(cls.lambda);
    e["algebra"] = cls.canonical;
    nlohmann::ordered_json factors = nlohmann::ordered_json::array();
    for (const auto& f : cls.factors) {
      factors.push_back({{"name", f.name}, {"dim", f.dim}});
    }
    e["factors"] = std::move(factors);
    e["residual_dim"] = cls.residual_dim;
    e["total_dim"] = cls.total_dim;
    e["kernel_dim"] = ranks[k].kernel_dim;
    e["complex_case"] = cls.complex_case;
    arr.push_back(std::move(e));
    if (!c.quiet) {
      std::cout << "x = " << parameter_text(cls.lambda) << ": "
                << cls.canonical << " (dim " << cls.total_dim
                << ", kernel " << ranks[k].kernel_dim
                << (match ? ")" : ") MISMATCH") << "\n";
    }
  }
  nlohmann::ordered_json j;
  j["schema"] = "rigidstab-classes/1";
  j["classes"] = std::move(arr);
  j["dimensions_match"] = ok;
  write_text_file(out_path(cfg, "classes.json"), dump_deterministic(j));
  return ok ? 0 : 1;
}

int cmd_sweep(const Common& c, const RunConfig& cfg) {
  const int nplanes = static_cast<int>(cfg.rotation.planes.size());
  if (c.plane < 1 || c.plane > nplanes) {
    throw Error(ErrorCode::BadParameters, "sweep: --plane out of range");
  }
  if (!(c.sweep_min < c.sweep_max)) {
    throw Error(ErrorCode::BadParameters, "sweep: need --min < --max");
  }
  if (c.steps < 2) {
    throw Error(ErrorCode::BadParameters, "sweep: need at least 2 steps");
  }
  const BodySpec body = validate_body(cfg.eigenvalues, cfg.tol);

  const auto status_at = [&](double w) -> Stability {
    RotationSpec rs = cfg.rotation;
    rs.planes[c.plane - 1].omega = w;
    const StationaryRotation r = build_stationary(body, rs, cfg.tol);
    return stability_verdict(build_diagram(r, cfg.tol)).status;
  };

  const double h = (c.sweep_max - c.sweep_min) / (c.steps - 1);
  std::vector<double> omegas(c.steps);
  std::vector<Stability> statuses(c.steps, Stability::Stable);
  std::vector<std::string> failures(c.steps);
  parallel_for(c.steps, c.jobs, [&](int i) {
    omegas[i] = c.sweep_min + h * i;
    try {
      statuses[i] = status_at(omegas[i]);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  for (int i = 0; i < c.steps; ++i) {
    if (!failures[i].empty()) {
      throw Error(ErrorCode::BadParameters,
                  "sweep: omega = " + std::to_string(omegas[i]) + ": " +
                      failures[i]);
    }
  }

  struct Transition {
    double lower, upper;
    Stability below, above;
  };
  std::vector<Transition> transitions;
  for (int i = 0; i + 1 < c.steps; ++i) {
    if (statuses[i] == statuses[i + 1]) continue;
    double lo = omegas[i], hi = omegas[i + 1];
    const Stability below = statuses[i], above = statuses[i + 1];
    while (hi - lo > 1e-6 * std::max({std::abs(lo), std::abs(hi), 1e-12})) {
      const double mid = 0.5 * (lo + hi);
      if (status_at(mid) == below) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    transitions.push_back({lo, hi, below, above});
  }

  nlohmann::ordered_json j;
  j["schema"] = "rigidstab-sweep/1";
  j["plane"] = c.plane;
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (int i = 0; i < c.steps; ++i) {
    grid.push_back({{"omega", omegas[i]}, {"status", to_string(statuses[i])}});
  }
  j["grid"] = std::move(grid);
  nlohmann::ordered_json trans = nlohmann::ordered_json::array();
  for (const auto& t : transitions) {
    trans.push_back({{"lower", t.lower},
                     {"upper", t.upper},
                     {"below", to_string(t.below)},
                     {"above", to_string(t.above)}});
  }
  j["transitions"] = std::move(trans);
  write_text_file(out_path(cfg, "sweep.json"), dump_deterministic(j));

  if (!c.quiet) {
    for (int i = 0; i < c.steps; ++i) {
      std::cout << "omega = " << omegas[i] << ": " << to_string(statuses[i])
                << "\n";
    }
    for (const auto& t : transitions) {
      std::cout << "transition in [" << t.lower << ", " << t.upper
                << "]: " << to_string(t.below) << " -> " << to_string(t.above)
                << "\n";
    }
    if (transitions.empty()) std::cout << "no verdict transitions\n";
    std::cout << "wrote " << out_path(cfg, "sweep.json") << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{
      "stability of stationary rotations of a free multidimensional rigid "
      "body"};
  app.require_subcommand(1);
  Common c;

  CLI::App* a_analyze = app.add_subcommand(
      "analyze", "full report: diagram, verdict, spectra, certificates");
  CLI::App* a_spectrum = app.add_subcommand(
      "spectrum", "closed-form linearization spectrum vs dense eigensolver");
  CLI::App* a_simulate = app.add_subcommand(
      "simulate", "integrate a kicked trajectory and track invariants");
  CLI::App* a_probe = app.add_subcommand(
      "probe", "perturbation experiment checked against the verdict");
  CLI::App* a_classify = app.add_subcommand(
      "classify", "stabilizer algebra at every exceptional parameter");
  CLI::App* a_sweep = app.add_subcommand(
      "sweep", "verdicts across a range of one plane's angular velocity");
  for (CLI::App* sub :
       {a_analyze, a_spectrum, a_simulate, a_probe, a_classify, a_sweep}) {
    add_common(sub, c);
  }
  a_sweep->add_option("--plane", c.plane, "1-based plane index to sweep");
  a_sweep->add_option("--min", c.sweep_min, "lowest angular velocity")
      ->required();
  a_sweep->add_option("--max", c.sweep_max, "highest angular velocity")
      ->required();
  a_sweep->add_option("--steps", c.steps, "grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    RunConfig cfg = load_config(c.config_path);
    if (!c.out_dir.empty()) cfg.output.dir = c.out_dir;
    if (sub->count("--svg") > 0) cfg.output.svg = c.svg_flag;
    if (sub->count("--seed") > 0) cfg.probe.seed = c.seed;
    if (!cfg.output.dir.empty()) {
      std::filesystem::create_directories(cfg.output.dir);
    }

    if (sub == a_analyze) return cmd_analyze(c, cfg);
    if (sub == a_spectrum) return cmd_spectrum(c, cfg);
    if (sub == a_simulate) return cmd_simulate(c, cfg);
    if (sub == a_probe) return cmd_probe(c, cfg);
    if (sub == a_classify) return cmd_classify(c, cfg);
    if (sub == a_sweep) return cmd_sweep(c, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace rigidstab
