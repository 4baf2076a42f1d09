#pragma once

#include <complex>
#include <string>

#include "json.hpp"
#include "rigidstab/types.hpp"

namespace rigidstab {

// Serialization with a pinned number format: every float is written with
// %.12g, so identical values give identical bytes on every run. Keys keep
// their insertion order. Nonfinite floats become null.
std::string dump_deterministic(const nlohmann::ordered_json& j, int indent = 2);

std::string format_number(double v);

nlohmann::ordered_json json_complex(const std::complex<double>& z);

// Real parameters as plain numbers, strictly complex ones as {re, im},
// infinity as the string "inf".
nlohmann::ordered_json json_parameter(const PencilParameter& p);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace rigidstab
