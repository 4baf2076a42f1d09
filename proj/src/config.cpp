#include "rigidstab/config.hpp"

#include <initializer_list>
#include <string>

#include "rigidstab/json_io.hpp"

namespace rigidstab {

namespace {

using njson = nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::BadConfig, "config: " + path + ": " + what);
}

void check_keys(const njson& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) bad(path.empty() ? it.key() : path + "." + it.key(),
                    "unknown key");
  }
}

const njson* get_object(const njson& j, const std::string& key,
                        const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) return nullptr;
  if (!it->is_object()) bad(path, "expected an object");
  return &*it;
}

double get_number(const njson& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

double get_positive(const njson& j, const std::string& path) {
  const double v = get_number(j, path);
  if (!(v > 0.0)) bad(path, "must be positive");
  return v;
}

int get_count(const njson& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  const long long v = j.get<long long>();
  if (v < 1) bad(path, "must be at least 1");
  return static_cast<int>(v);
}

template <typename T>
void maybe(const njson& obj, const char* key, const std::string& path, T&& set) {
  const auto it = obj.find(key);
  if (it != obj.end()) set(*it, path + "." + key);
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) bad("", "top level must be an object");
  check_keys(j, "", {"body", "planes", "tolerances", "integrator", "probe",
                     "output"});

  RunConfig cfg;

  const njson* body = get_object(j, "body", "body");
  if (!body) bad("body", "required");
  check_keys(*body, "body", {"eigenvalues"});
  const auto ev = body->find("eigenvalues");
  if (ev == body->end() || !ev->is_array()) {
    bad("body.eigenvalues", "expected an array of numbers");
  }
  for (std::size_t k = 0; k < ev->size(); ++k) {
    cfg.eigenvalues.push_back(
        get_number((*ev)[k], "body.eigenvalues[" + std::to_string(k) + "]"));
  }
  if (cfg.eigenvalues.size() < 2) bad("body.eigenvalues", "need at least two");

  const auto planes = j.find("planes");
  if (planes == j.end() || !planes->is_array() || planes->empty()) {
    bad("planes", "expected a nonempty array");
  }
  for (std::size_t k = 0; k < planes->size(); ++k) {
    const std::string path = "planes[" + std::to_string(k) + "]";
    const njson& p = (*planes)[k];
    if (!p.is_object()) bad(path, "expected an object");
    check_keys(p, path, {"axes", "omega"});
    const auto axes = p.find("axes");
    if (axes == p.end() || !axes->is_array() || axes->size() != 2 ||
        !(*axes)[0].is_number_integer() || !(*axes)[1].is_number_integer()) {
      bad(path + ".axes", "expected two integer axis indices");
    }
    const auto omega = p.find("omega");
    if (omega == p.end()) bad(path + ".omega", "required");
    PlaneSpec ps;
    ps.axis_a = (*axes)[0].get<int>();
    ps.axis_b = (*axes)[1].get<int>();
    ps.omega = get_number(*omega, path + ".omega");
    if (ps.omega == 0.0) bad(path + ".omega", "must be nonzero");
    cfg.rotation.planes.push_back(ps);
  }

  if (const njson* t = get_object(j, "tolerances", "tolerances")) {
    check_keys(*t, "tolerances",
               {"class_tol", "rank_tol", "pd_tol", "asymmetry_tol"});
    maybe(*t, "class_tol", "tolerances", [&](const njson& v, const std::string& p) {
      cfg.tol.class_tol = get_positive(v, p);
    });
    maybe(*t, "rank_tol", "tolerances", [&](const njson& v, const std::string& p) {
      cfg.tol.rank_tol = get_positive(v, p);
    });
    maybe(*t, "pd_tol", "tolerances", [&](const njson& v, const std::string& p) {
      cfg.tol.pd_tol = get_positive(v, p);
    });
    maybe(*t, "asymmetry_tol", "tolerances", [&](const njson& v, const std::string& p) {
      cfg.tol.asymmetry_tol = get_positive(v, p);
    });
  }

  if (const njson* g = get_object(j, "integrator", "integrator")) {
    check_keys(*g, "integrator", {"dt", "t_end", "norm_guard", "kick"});
    maybe(*g, "dt", "integrator", [&](const njson& v, const std::string& p) {
      cfg.integrator.dt = get_positive(v, p);
    });
    maybe(*g, "t_end", "integrator", [&](const njson& v, const std::string& p) {
      cfg.integrator.t_end = get_positive(v, p);
    });
    maybe(*g, "norm_guard", "integrator", [&](const njson& v, const std::string& p) {
      cfg.integrator.norm_guard = get_positive(v, p);
    });
    maybe(*g, "kick", "integrator", [&](const njson& v, const std::string& p) {
      cfg.kick = get_number(v, p);
      if (cfg.kick < 0.0) bad(p, "must be nonnegative");
    });
  }

  if (const njson* pr = get_object(j, "probe", "probe")) {
    check_keys(*pr, "probe", {"epsilon", "trials", "seed", "dt", "t_max"});
    maybe(*pr, "epsilon", "probe", [&](const njson& v, const std::string& p) {
      cfg.probe.epsilon = get_positive(v, p);
    });
    maybe(*pr, "trials", "probe", [&](const njson& v, const std::string& p) {
      cfg.probe.trials = get_count(v, p);
    });
    maybe(*pr, "seed", "probe", [&](const njson& v, const std::string& p) {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        bad(p, "expected a nonnegative integer");
      }
      cfg.probe.seed = v.get<std::uint64_t>();
    });
    maybe(*pr, "dt", "probe", [&](const njson& v, const std::string& p) {
      cfg.probe.dt = get_positive(v, p);
    });
    maybe(*pr, "t_max", "probe", [&](const njson& v, const std::string& p) {
      cfg.probe.t_max = get_positive(v, p);
    });
  }

  if (const njson* o = get_object(j, "output", "output")) {
    check_keys(*o, "output", {"dir", "svg"});
    maybe(*o, "dir", "output", [&](const njson& v, const std::string& p) {
      if (!v.is_string()) bad(p, "expected a string");
      cfg.output.dir = v.get<std::string>();
    });
    maybe(*o, "svg", "output", [&](const njson& v, const std::string& p) {
      if (!v.is_boolean()) bad(p, "expected a boolean");
      cfg.output.svg = v.get<bool>();
    });
  }

  return cfg;
}

RunConfig load_config(const std::string& path) {
  const std::string text = read_text_file(path);
  njson j;
  try {
    j = njson::parse(text);
  } catch (const njson::parse_error& e) {
    throw Error(ErrorCode::BadConfig,
                "config " + path + ": " + std::string(e.what()));
  }
  return parse_config(j);
}

StationaryRotation rotation_from_config(const RunConfig& cfg) {
  const BodySpec body = validate_body(cfg.eigenvalues, cfg.tol);
  return build_stationary(body, cfg.rotation, cfg.tol);
}

}  // namespace rigidstab
