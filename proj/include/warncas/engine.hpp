//===-- engine.hpp - Whole-tree cascade drivers ---------------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Drives one cascade engine over a pair of source trees: collects the
// files the warnings refer to, runs the per-file machinery (line diff,
// tree matching, or graph construction), and merges the per-file results
// into a single report. Engines are independent; one engine failing never
// poisons the others.
//
//===----------------------------------------------------------------------===//

#ifndef WARNCAS_ENGINE_HPP
#define WARNCAS_ENGINE_HPP

#include "warncas/ast_diff.hpp"
#include "warncas/source_tree.hpp"
#include "warncas/warning.hpp"

#include <optional>
#include <string>
#include <vector>

namespace warncas {

struct EngineInput {
  SourceTree v1;
  SourceTree v2;
  WarningSet ws1;
  WarningSet ws2;
  MatchParams params;
};

/// Runs one engine end to end. Warning sets are aggregated internally.
/// Throws ParseError (ast/cfg engines) or GraphError (cfg engine) when the
/// inputs cannot be processed at all.
CascadeReport run_engine(EngineKind kind, const EngineInput& input);

struct EngineRunResult {
  std::optional<CascadeReport> text;
  std::optional<CascadeReport> ast;
  std::optional<CascadeReport> cfg;
  /// One "<engine>: <message>" entry per engine that threw.
  std::vector<std::string> errors;
};

/// Runs all three engines, isolating failures per engine.
EngineRunResult run_all_engines(const EngineInput& input);

} // namespace warncas

#endif // WARNCAS_ENGINE_HPP
