//===-- harness.hpp - Ground-truth pairs, scoring, suite runner -----------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Synthetic ground truth: a generated base program is mutated by
// bug-irrelevant refactorings (buggy-buggy pairs) or by deleting the bug
// statement (buggy-fixed pairs), while the true location of the tracked
// bug warning is carried along. Scoring then checks each engine's report
// against that ground truth, and the suite runner aggregates outcomes per
// mutation kind.
//
//===----------------------------------------------------------------------===//

#ifndef WARNCAS_HARNESS_HPP
#define WARNCAS_HARNESS_HPP

#include "warncas/engine.hpp"
#include "warncas/progen.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace warncas {

enum class MutationKind {
  RenameCallee,
  InsertCommentLine,
  InsertStatementBlock,
  DuplicateAdjacentLine,
  WhitespaceReflow,
  DeleteBugLine,
};

enum class PairKind { BuggyBuggy, BuggyFixed };

std::string to_string(MutationKind kind);
std::string to_string(PairKind kind);

struct GroundTruthPair {
  PairKind kind = PairKind::BuggyBuggy;
  SourceTree v1_root;
  SourceTree v2_root;
  std::string bug_file;
  int bug_line_v1 = 0;
  /// Present iff the pair is BuggyBuggy.
  std::optional<int> bug_line_v2;
  std::string bug_condition;
  std::vector<std::string> mutation_trace;
  WarningSet ws1;
  WarningSet ws2;
};

/// Applies `mutations` in order to the base program. Deterministic for
/// equal inputs. Throws ConfigError when a mutation does not fit the pair
/// kind (DeleteBugLine is required for BuggyFixed and forbidden otherwise)
/// or cannot apply (RenameCallee with no call at the bug line).
GroundTruthPair generate_pair(uint64_t seed, const BaseProgram& base,
                              PairKind kind,
                              const std::vector<MutationKind>& mutations);

struct ScoreResult {
  bool success = false;
  std::string reason;
};

/// BuggyBuggy: success iff the bug warning matched exactly to the V2 bug
/// line. BuggyFixed: success iff the bug warning is unmatched. Throws
/// ConfigError when the report does not contain the bug warning at all.
ScoreResult score_pair(const GroundTruthPair& pair,
                       const CascadeReport& report);

/// All three engines over one pair's trees and warnings.
EngineRunResult run_all_engines(const GroundTruthPair& pair,
                                const MatchParams& params = {});

struct OverlapCounts {
  size_t text = 0;
  size_t ast = 0;
  size_t cfg = 0;
  size_t text_ast = 0;
  size_t text_cfg = 0;
  size_t ast_cfg = 0;
  size_t all = 0;
};

struct OverlapReport {
  OverlapCounts same_bug; // V1 warnings each engine matched
  OverlapCounts bug_fix;  // V1 warnings each engine left unmatched
};

/// Venn counts over three reports for the same warning universe; throws
/// ConfigError when the reports disagree about which V1 warnings exist.
OverlapReport overlap_report(const CascadeReport& r_text,
                             const CascadeReport& r_ast,
                             const CascadeReport& r_cfg);

struct BenchOptions {
  /// Number of pairs to generate; ignored when suite_dir is set.
  int generate = 0;
  uint64_t seed = 0;
  /// Directory of pair directories (v1/, v2/, warnings_v1.tsv,
  /// warnings_v2.tsv, meta.json each).
  std::string suite_dir;
  /// When set, generated pairs are also written here in suite layout.
  std::string emit_dir;
  int jobs = 1;
  MatchParams params;
};

struct PairOutcome {
  std::string name;
  std::string label; // first mutation kind in the trace; "none" when empty
  bool skipped = false;
  std::string skip_reason;
  /// Per engine: empty = engine errored; reason carries the message.
  std::optional<bool> text_success, ast_success, cfg_success;
  std::string text_reason, ast_reason, cfg_reason;
};

struct BenchResult {
  std::vector<PairOutcome> outcomes;
  /// Deterministic human-readable summary (no timings, no paths beyond
  /// pair names).
  std::string summary;
};

BenchResult run_bench(const BenchOptions& options);

/// Suite-directory persistence for one pair.
void write_pair_dir(const std::string& dir, const GroundTruthPair& pair);
GroundTruthPair read_pair_dir(const std::string& dir);

} // namespace warncas

#endif // WARNCAS_HARNESS_HPP
