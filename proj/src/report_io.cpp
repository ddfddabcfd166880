//===-- report_io.cpp - JSON report reader/writer -------------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "warncas/report_io.hpp"

#include "warncas/error.hpp"

#include "json.hpp"

#include <fstream>

namespace warncas {

namespace {

using nlohmann::json;

json warning_to_json(const Warning& w) {
  return json{{"condition", w.condition},
              {"file", w.file},
              {"id", w.id},
              {"line", w.line}};
}

Warning warning_from_json(const json& j, Version v) {
  Warning w;
  w.version = v;
  w.condition = j.at("condition").get<std::string>();
  w.file = j.at("file").get<std::string>();
  w.id = j.at("id").get<std::string>();
  w.line = j.at("line").get<int>();
  return w;
}

} // namespace

std::string report_to_json(const CascadeReport& report,
                           const MatchParams& params) {
  json j;
  j["format_version"] = "1";
  j["engine"] = to_string(report.engine);
  j["params"] = {{"max_size", params.max_size},
                 {"min_dice", params.min_dice},
                 {"min_height", params.min_height}};
  j["matched"] = json::array();
  for (const MatchedPair& m : report.matched)
    j["matched"].push_back(json{{"recovered", m.recovered},
                                {"v1", warning_to_json(m.v1)},
                                {"v2", warning_to_json(m.v2)}});
  j["unmatched_v1"] = json::array();
  for (const Warning& w : report.unmatched_v1)
    j["unmatched_v1"].push_back(warning_to_json(w));
  j["unmatched_v2"] = json::array();
  for (const Warning& w : report.unmatched_v2)
    j["unmatched_v2"].push_back(warning_to_json(w));
  j["diagnostics"] = report.diagnostics;
  return j.dump(2) + "\n";
}

void write_report(const std::string& path, const CascadeReport& report,
                  const MatchParams& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ConfigError("cannot write report file: " + path);
  out << report_to_json(report, params);
}

CascadeReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot read report file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed report " + path + ": " + e.what());
  }
  try {
    if (j.at("format_version").get<std::string>() != "1")
      throw ConfigError("unsupported report format_version in " + path);
    CascadeReport report;
    const std::string engine = j.at("engine").get<std::string>();
    if (engine == "text")
      report.engine = EngineKind::Text;
    else if (engine == "ast")
      report.engine = EngineKind::Ast;
    else if (engine == "cfg")
      report.engine = EngineKind::Cfg;
    else
      throw ConfigError("unknown engine '" + engine + "' in " + path);
    for (const json& m : j.at("matched")) {
      MatchedPair pair;
      pair.recovered = m.at("recovered").get<bool>();
      pair.v1 = warning_from_json(m.at("v1"), Version::V1);
      pair.v2 = warning_from_json(m.at("v2"), Version::V2);
      report.matched.push_back(std::move(pair));
    }
    for (const json& w : j.at("unmatched_v1"))
      report.unmatched_v1.push_back(warning_from_json(w, Version::V1));
    for (const json& w : j.at("unmatched_v2"))
      report.unmatched_v2.push_back(warning_from_json(w, Version::V2));
    for (const json& d : j.at("diagnostics"))
      report.diagnostics.push_back(d.get<std::string>());
    return report;
  } catch (const json::exception& e) {
    throw ConfigError("malformed report " + path + ": " + e.what());
  }
}

} // namespace warncas
