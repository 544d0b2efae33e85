#include "record.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmlbench/types.hpp"

namespace qmlbench::harness {

json to_json(const ResultRecord& r) {
  json j;
  j["subcommand"] = r.subcommand;
  j["version"] = r.version;
  j["config"] = r.config;
  j["metrics"] = r.metrics;
  j["artifacts"] = json::object();
  for (auto& [k, v] : r.artifacts) j["artifacts"][k] = v;
  return j;
}

ResultRecord record_from_json(const json& j) {
  ResultRecord r;
  r.subcommand = j.at("subcommand").get<std::string>();
  r.version = j.value("version", std::string(kVersion));
  r.config = j.value("config", json::object());
  r.metrics = j.value("metrics", json::object());
  if (j.contains("artifacts"))
    for (auto& [k, v] : j["artifacts"].items()) r.artifacts[k] = v.get<std::string>();
  return r;
}

namespace {

std::string real(double v) {
  if (!std::isfinite(v)) return "null";  // JSON has no inf/nan
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // keep it a float on reload
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(indent, ' '), pad2(indent + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        os << pad2 << json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 2);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      os << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool flat = true;
      for (auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        os << pad2;
        write(os, j[i], indent + 2);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      os << pad << "]";
      return;
    }
    case json::value_t::number_float:
      os << real(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump(const json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

void persist_result(const ResultRecord& r, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << dump(to_json(r));
  if (!f) throw ValidationError("write to '" + path + "' failed");
}

ResultRecord load_result(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "'");
  try {
    return record_from_json(json::parse(f));
  } catch (const json::exception& e) {
    throw ValidationError("'" + path + "' is not a result record: " + e.what());
  }
}

}  // namespace qmlbench::harness
