#include "rigidstab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rigidstab {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

void dump_rec(const nlohmann::ordered_json& j, std::string& out, int indent,
              int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');

  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        out += pad_in;
        out += nlohmann::ordered_json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
        if (k + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        out += pad_in;
        dump_rec(j[k], out, indent, depth + 1);
        if (k + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      // strings (with escaping), integers, booleans, null
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_deterministic(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

nlohmann::ordered_json json_complex(const std::complex<double>& z) {
  return nlohmann::ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

nlohmann::ordered_json json_parameter(const PencilParameter& p) {
  if (p.infinite) return "inf";
  if (p.value.imag() == 0.0) return p.value.real();
  return json_complex(p.value);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
  f << content;
  if (!f) throw Error(ErrorCode::IoError, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace rigidstab
