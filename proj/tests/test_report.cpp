#include "doctest.h"

#include <string>

#include "fixtures.hpp"
#include "rigidstab/dynamics.hpp"
#include "rigidstab/json_io.hpp"
#include "rigidstab/report.hpp"
#include "rigidstab/svg.hpp"

using namespace rigidstab;

namespace {

int count_occurrences(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("json writer pins the number format") {
  nlohmann::ordered_json j;
  j["third"] = 1.0 / 3.0;
  j["half"] = 2.5;
  j["tiny"] = 1e-7;
  j["neg"] = -123456.789;
  j["int"] = 42;
  j["text"] = "line\"break\n";
  j["list"] = nlohmann::ordered_json::array({1.0, 2.0, nlohmann::ordered_json{{"k", 3.5}}});

  const std::string a = dump_deterministic(j);
  const std::string b = dump_deterministic(j);
  CHECK(a == b);
  CHECK(a.find("0.333333333333") != std::string::npos);
  CHECK(a.find("2.5") != std::string::npos);
  CHECK(a.find("1e-07") != std::string::npos);
  CHECK(a.find("\"line\\\"break\\n\"") != std::string::npos);

  const nlohmann::json back = nlohmann::json::parse(a);
  CHECK(back["third"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  CHECK(back["int"].get<int>() == 42);
  CHECK(back["list"][2]["k"].get<double>() == 3.5);

  // keys stay in insertion order
  CHECK(a.find("\"third\"") < a.find("\"half\""));
  CHECK(a.find("\"half\"") < a.find("\"tiny\""));
}

TEST_CASE("parameter encoding: real, complex, infinite") {
  CHECK(json_parameter(PencilParameter::finite(4.0)) == nlohmann::ordered_json(4.0));
  const auto c = json_parameter(PencilParameter::finite({1.5, -2.0}));
  CHECK(c["re"] == 1.5);
  CHECK(c["im"] == -2.0);
  CHECK(json_parameter(PencilParameter::infinity()) == nlohmann::ordered_json("inf"));
}

TEST_CASE("svg shows one parabola, one dashed line and a hollow marker") {
  const ParabolicDiagram d = build_diagram(fixtures::body3_middle());
  const std::string svg = render_svg(d);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count_occurrences(svg, "<path") == 1);
  CHECK(count_occurrences(svg, "stroke-dasharray") == 1);
  // single lower intersection: hollow circle
  CHECK(count_occurrences(svg, "fill=\"white\" stroke=") == 1);
  // squared-eigenvalue ticks labeled
  CHECK(svg.find(">1</text>") != std::string::npos);
  CHECK(svg.find(">4</text>") != std::string::npos);
  CHECK(svg.find(">9</text>") != std::string::npos);

  CHECK(render_svg(d) == svg);  // byte determinism
}

TEST_CASE("svg marker shapes follow intersection kinds") {
  // tangency: concentric ring
  std::string svg = render_svg(build_diagram(fixtures::body4_tangent()));
  CHECK(count_occurrences(svg, "r=\"7\"") == 1);
  CHECK(count_occurrences(svg, "r=\"3.2\"") == 1);

  // complex pair: no marker, one legend note
  svg = render_svg(build_diagram(fixtures::body4_outer(2.0)));
  CHECK(count_occurrences(svg, "<circle") == 0);
  CHECK(count_occurrences(svg, "complex pair at x =") == 1);

  // meeting at infinity plus one filled upper point
  svg = render_svg(build_diagram(fixtures::body4_equal_momenta()));
  CHECK(count_occurrences(svg, "meet at infinity") == 1);
  CHECK(count_occurrences(svg, "<circle") == 1);
  CHECK(svg.find("fill=\"#2b6cb0\"") != std::string::npos);

  // two planes only, nothing meets: curves and axes, no markers
  svg = render_svg(build_diagram(fixtures::make({1, 2}, {{1, 2, 1.0}})));
  CHECK(count_occurrences(svg, "<path") == 1);
  CHECK(count_occurrences(svg, "<circle") == 0);
}

TEST_CASE("fine pencil certificate holds below the smallest eigenvalue") {
  for (const StationaryRotation& rot :
       {fixtures::body3_middle(), fixtures::body5(), fixtures::body4_outer(2.0)}) {
    const FinePencilCheck c = fine_pencil_check(rot);
    const double lam_min = *std::min_element(rot.lam.begin(), rot.lam.end());
    CHECK(c.ok);
    CHECK(c.max_defect < 1e-8);
    CHECK(c.alpha < lam_min * lam_min);
    CHECK(c.beta < lam_min * lam_min);
  }
}

TEST_CASE("analysis report assembles every section") {
  const AnalysisReport r = analyze(fixtures::body4_outer(0.5));
  CHECK(r.verdict.status == Stability::Stable);
  CHECK(r.parameters.size() == 3);  // two double points plus infinity
  REQUIRE(r.spectra.has_value());
  CHECK(r.spectra->max_mismatch < 1e-8);
  REQUIRE(r.diagonalizability.has_value());
  CHECK(r.diagonalizability->ok);
  REQUIRE(r.fine_pencil.has_value());
  CHECK(r.fine_pencil->ok);
  CHECK(r.certificates.size() == 3);
  for (const CompactnessCertificate& c : r.certificates) {
    if (c.applicable) CHECK(c.compact);
  }
  REQUIRE(r.classes.size() == 3);
  CHECK(r.classes[0].canonical == "u(2)");
  CHECK(r.classes[1].canonical == "u(2)");
  CHECK(r.classes[2].canonical == "R^2");
  CHECK(!r.probe.has_value());

  const AnalysisReport u = analyze(fixtures::body4_outer(4.0));
  CHECK(u.verdict.status == Stability::Unstable);
  CHECK(!u.verdict.witnesses.empty());
  bool failed_somewhere = false;
  for (const CompactnessCertificate& c : u.certificates) {
    if (c.applicable && !c.compact) failed_somewhere = true;
  }
  CHECK(failed_somewhere);
}

TEST_CASE("report json round-trips and stays byte-identical") {
  const AnalysisReport r = analyze(fixtures::body4_outer(0.5));
  const std::string text = dump_deterministic(report_json(r));
  const std::string again = dump_deterministic(report_json(analyze(fixtures::body4_outer(0.5))));
  CHECK(text == again);

  const nlohmann::json back = nlohmann::json::parse(text);
  CHECK(back["schema"] == "rigidstab-report/1");
  CHECK(back["tool"]["name"] == "rigidstab");
  CHECK(back["verdict"]["status"] == "stable");
  CHECK(back["verdict"]["witnesses"].empty());
  CHECK(back["spectrum_parameters"].size() == 3);
  CHECK(back["spectrum_parameters"][2] == "inf");
  CHECK(back["diagram"]["intersections"].size() == 2);
  CHECK(back["lie_classes"][0]["algebra"] == "u(2)");
  CHECK(back["certificates"]["fine_pencil"]["ok"] == true);
}

TEST_CASE("unstable report carries witnesses in json") {
  const AnalysisReport r = analyze(fixtures::body4_crossed());
  const nlohmann::json back =
      nlohmann::json::parse(dump_deterministic(report_json(r)));
  CHECK(back["verdict"]["status"] == "unstable");
  CHECK(back["verdict"]["witnesses"].size() >= 1);
  CHECK(back["verdict"]["witnesses"][0]["kind"] == "real_lower");
}

TEST_CASE("probe assessment agrees with the verdicts") {
  ProbeOptions opt;
  opt.epsilon = 1e-7;
  opt.trials = 2;
  opt.t_max = 50.0;
  opt.seed = 777;

  const StationaryRotation mid = fixtures::body3_middle();
  const Verdict vm = stability_verdict(build_diagram(mid));
  const ProbeAssessment pa = assess_probe(mid, vm, opt);
  CHECK(pa.rate_applicable);
  CHECK(pa.predicted_rate == doctest::Approx(1.0 / std::sqrt(15.0)).epsilon(1e-12));
  CHECK(pa.result.escaped);
  CHECK(pa.verdict_consistent);

  const StationaryRotation lng = fixtures::body3_long();
  const Verdict vl = stability_verdict(build_diagram(lng));
  const ProbeAssessment pb = assess_probe(lng, vl, opt);
  CHECK(!pb.result.escaped);
  CHECK(pb.verdict_consistent);
  CHECK(pb.note.find("bounded") != std::string::npos);

  const StationaryRotation tan = fixtures::body4_tangent();
  const Verdict vt = stability_verdict(build_diagram(tan));
  ProbeOptions short_opt = opt;
  short_opt.t_max = 5.0;
  short_opt.trials = 1;
  const ProbeAssessment pc = assess_probe(tan, vt, short_opt);
  CHECK(pc.verdict_consistent);
  CHECK(pc.note.find("tangent") != std::string::npos);
}

TEST_CASE("trajectory csv is rectangular and deterministic") {
  const StationaryRotation rot = fixtures::body3_long();
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> states;
  IntegrationOptions opt;
  opt.dt = 1e-3;
  opt.t_end = 0.05;
  opt.observer_stride = 10;
  integrate(rot.M, rot.lam, opt, [&](double t, const Eigen::MatrixXd& M) {
    times.push_back(t);
    states.push_back(M);
    return true;
  });
  REQUIRE(times.size() == 6);  // initial sample plus every tenth of 50 steps

  const std::string csv = trajectory_csv(times, states, rot.lam);
  CHECK(csv == trajectory_csv(times, states, rot.lam));
  CHECK(csv.rfind("t,m_0_1,m_0_2,m_1_2,tr2_s0,tr4_s0,tr2_s1,tr4_s1,tr2_s2,tr4_s2\n",
                  0) == 0);
  CHECK(count_occurrences(csv, "\n") == 7);  // header plus six rows

  CHECK_THROWS_AS(trajectory_csv({0.0}, {}, rot.lam), Error);
}
