//===-- engine.cpp - Per-engine drivers over source trees -----------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "warncas/engine.hpp"

#include "warncas/line_diff.hpp"
#include "warncas/mvicfg.hpp"
#include "warncas/parser.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace warncas {

namespace {

std::set<std::string> warning_files(const WarningSet& ws1,
                                    const WarningSet& ws2) {
  std::set<std::string> files;
  for (const Warning& w : ws1.warnings)
    files.insert(w.file);
  for (const Warning& w : ws2.warnings)
    files.insert(w.file);
  return files;
}

std::map<std::string, LineMapping>
mappings_for(const std::set<std::string>& files, const SourceTree& v1,
             const SourceTree& v2) {
  std::map<std::string, LineMapping> mappings;
  for (const std::string& f : files) {
    auto it1 = v1.find(f), it2 = v2.find(f);
    if (it1 != v1.end() && it2 != v2.end())
      mappings.emplace(f, diff_lines(split_lines(it1->second),
                                     split_lines(it2->second)));
  }
  return mappings;
}

WarningSet filter_by_file(const WarningSet& ws, const std::string& file) {
  WarningSet out;
  out.version = ws.version;
  for (const Warning& w : ws.warnings)
    if (w.file == file)
      out.warnings.push_back(w);
  return out;
}

CascadeReport run_text(const WarningSet& ws1, const WarningSet& ws2,
                       const EngineInput& input) {
  return cascade_text(ws1, ws2,
                      mappings_for(warning_files(ws1, ws2), input.v1,
                                   input.v2));
}

CascadeReport run_ast(const WarningSet& ws1, const WarningSet& ws2,
                      const EngineInput& input) {
  CascadeReport report;
  report.engine = EngineKind::Ast;
  std::set<std::string> matched_v2;

  for (const std::string& file : warning_files(ws1, ws2)) {
    WarningSet f1 = filter_by_file(ws1, file);
    WarningSet f2 = filter_by_file(ws2, file);
    auto it1 = input.v1.find(file), it2 = input.v2.find(file);
    if (it1 == input.v1.end() || it2 == input.v2.end()) {
      if (!f1.warnings.empty() || !f2.warnings.empty())
        report.diagnostics.push_back(
            file + " is missing from a version; its warnings are unmatched");
      for (const Warning& w : f1.warnings)
        report.unmatched_v1.push_back(w);
      continue; // V2 warnings fall out via the matched_v2 sweep below
    }
    Ast t1 = parse_source(it1->second, file);
    Ast t2 = parse_source(it2->second, file);
    NodeMapping mapping = match_asts(t1, t2, input.params);
    CascadeReport part = cascade_ast(f1, f2, t1, t2, mapping);
    for (MatchedPair& m : part.matched) {
      matched_v2.insert(m.v2.id);
      report.matched.push_back(std::move(m));
    }
    for (Warning& w : part.unmatched_v1)
      report.unmatched_v1.push_back(std::move(w));
    for (std::string& d : part.diagnostics)
      report.diagnostics.push_back(std::move(d));
  }
  for (const Warning& w : ws2.warnings)
    if (!matched_v2.count(w.id))
      report.unmatched_v2.push_back(w);
  return report;
}

CascadeReport run_cfg(const WarningSet& ws1, const WarningSet& ws2,
                      const EngineInput& input) {
  std::set<std::string> files = warning_files(ws1, ws2);
  std::vector<Mvicfg> cfgs_v1, cfgs_v2;
  for (const std::string& file : files) {
    auto it1 = input.v1.find(file);
    if (it1 != input.v1.end())
      cfgs_v1.push_back(
          build_cfg(parse_source(it1->second, file), Version::V1, file));
    auto it2 = input.v2.find(file);
    if (it2 != input.v2.end())
      cfgs_v2.push_back(
          build_cfg(parse_source(it2->second, file), Version::V2, file));
  }
  Mvicfg g = build_mvicfg(cfgs_v1, cfgs_v2,
                          mappings_for(files, input.v1, input.v2));
  EmbedResult embedded = embed_warnings(g, ws1, ws2);
  CascadeReport report = cascade_cfg(ws1, ws2, g);
  report.diagnostics.insert(report.diagnostics.begin(),
                            embedded.diagnostics.begin(),
                            embedded.diagnostics.end());
  return report;
}

} // namespace

CascadeReport run_engine(EngineKind kind, const EngineInput& input) {
  WarningSet ws1 = aggregate_warnings(input.ws1);
  WarningSet ws2 = aggregate_warnings(input.ws2);
  switch (kind) {
  case EngineKind::Text:
    return run_text(ws1, ws2, input);
  case EngineKind::Ast:
    return run_ast(ws1, ws2, input);
  case EngineKind::Cfg:
    return run_cfg(ws1, ws2, input);
  }
  return {}; // unreachable; silences -Wreturn-type
}

EngineRunResult run_all_engines(const EngineInput& input) {
  EngineRunResult result;
  const EngineKind kinds[] = {EngineKind::Text, EngineKind::Ast,
                              EngineKind::Cfg};
  for (EngineKind kind : kinds) {
    try {
      CascadeReport r = run_engine(kind, input);
      if (kind == EngineKind::Text)
        result.text = std::move(r);
      else if (kind == EngineKind::Ast)
        result.ast = std::move(r);
      else
        result.cfg = std::move(r);
    } catch (const std::exception& e) {
      result.errors.push_back(std::string(to_string(kind)) + ": " + e.what());
    }
  }
  return result;
}

} // namespace warncas
