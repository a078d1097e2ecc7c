#include "meanco/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace meanco {

namespace {

void dump(const nlohmann::ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad(indent * depth, ' ');
  const std::string pad1(indent * (depth + 1), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad1;
        out += nlohmann::json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump(it.value(), out, indent, depth + 1);
      }
      out += nl;
      out += pad;
      out += "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad1;
        dump(v, out, indent, depth + 1);
      }
      out += nl;
      out += pad;
      out += "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json17(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  dump(j, out, indent, 0);
  return out;
}

void write_json17(const nlohmann::ordered_json& j, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << dump_json17(j, 1) << "\n";
}

nlohmann::ordered_json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  nlohmann::ordered_json j;
  f >> j;
  return j;
}

}  // namespace meanco
