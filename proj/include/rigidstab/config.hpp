#pragma once

#include <string>

#include "json.hpp"
#include "rigidstab/body.hpp"
#include "rigidstab/dynamics.hpp"
#include "rigidstab/types.hpp"

namespace rigidstab {

struct OutputSettings {
  std::string dir = ".";
  bool svg = true;
};

// Everything the command line reads from a config file. Only the body and
// the planes are required; the rest falls back to the defaults here.
struct RunConfig {
  std::vector<double> eigenvalues;
  RotationSpec rotation;
  Tolerances tol;
  IntegrationOptions integrator;
  double kick = 0.05;  // relative perturbation used by the simulate command
  ProbeOptions probe;
  OutputSettings output;
};

// Parses and validates the documented schema. Unknown keys and malformed
// fields raise BadConfig with the offending path in the message.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

StationaryRotation rotation_from_config(const RunConfig& cfg);

}  // namespace rigidstab
