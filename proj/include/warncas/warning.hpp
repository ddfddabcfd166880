//===-- warning.hpp - Warning records and cascade report model -----------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// A warning is one static-analysis finding pinned to (file, line, condition).
// Cascading classifies each old-version warning as still-present (matched to a
// new-version warning), fixed (unmatched), or flags new-version leftovers as
// newly introduced. Everything downstream compares warnings by the exact
// (file, line, condition) triple; messages are documentation only.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace warncas {

enum class Version { V1 = 1, V2 = 2 };

const char* to_string(Version v);

struct Warning {
  std::string id;          // unique within its WarningSet, e.g. "v1:3"
  Version version = Version::V1;
  std::string file;        // path relative to the version's source root
  int line = 0;            // 1-based
  std::string function;    // empty when unknown
  std::string condition;   // checker id, e.g. "CWE-476"; exact-match key
  std::string message;     // free text, never used for matching
  std::set<std::string> tools;
};

struct WarningSet {
  Version version = Version::V1;
  std::vector<Warning> warnings;
};

/// Fate of a V1 warning (SameBug/BugFix) or a leftover V2 warning (NewInV2).
enum class CascadeClass { SameBug, BugFix, NewInV2 };

const char* to_string(CascadeClass c);

enum class EngineKind { Text, Ast, Cfg };

const char* to_string(EngineKind e);

struct MatchedPair {
  Warning v1;
  Warning v2;
  // True only when the control-flow engine matched the pair through the
  // divergence-region search rather than a shared node.
  bool recovered = false;
};

struct CascadeReport {
  EngineKind engine = EngineKind::Text;
  std::vector<MatchedPair> matched;
  std::vector<Warning> unmatched_v1; // BugFix
  std::vector<Warning> unmatched_v2; // NewInV2
  std::vector<std::string> diagnostics;
};

/// Parse warning records: one per line, five tab-separated fields
/// (tool, file, line, condition, message), '#' starts a comment line.
/// Throws WarningFormatError naming the offending line and field.
WarningSet load_warnings(const std::filesystem::path& path, Version version);

/// Same format, from memory; `origin` names the source in error messages.
WarningSet parse_warnings(const std::string& text, Version version,
                          const std::string& origin = "<warnings>");

/// Serialize back to the record format, one record per (warning, tool).
std::string format_warnings(const WarningSet& ws);

/// Merge records with equal (file, line, condition): tools are unioned, the
/// first-seen message and id win. Result ordered by (file, line, condition).
/// Idempotent and never grows the set.
WarningSet aggregate_warnings(const WarningSet& ws);

/// Drop warnings whose file matches any exclude glob ('*', '?', '**', and
/// '[...]' classes; '*'/'?' do not cross '/'). Throws ConfigError on an
/// invalid pattern.
WarningSet filter_warnings(const WarningSet& ws,
                           const std::vector<std::string>& exclude_globs);

/// Glob match over '/'-separated relative paths. Validates the pattern.
bool glob_match(const std::string& pattern, const std::string& path);

} // namespace warncas
