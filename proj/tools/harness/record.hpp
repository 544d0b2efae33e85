#pragma once

#include <map>
#include <string>

#include "json.hpp"

namespace qmlbench::harness {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

struct ResultRecord {
  std::string subcommand;
  json config = json::object();   // every flag that influenced the run
  json metrics = json::object();
  std::map<std::string, std::string> artifacts;  // name -> path
  std::string version = kVersion;
};

json to_json(const ResultRecord& r);
ResultRecord record_from_json(const json& j);

// pretty JSON; every real printed with 17 significant digits
std::string dump(const json& j);
void persist_result(const ResultRecord& r, const std::string& path);
ResultRecord load_result(const std::string& path);

}  // namespace qmlbench::harness
