//===-- line_diff.hpp - Line-level diff and text cascading ----------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Line matching between two file versions. A LineMapping is the set of
// (old line, new line) pairs of byte-identical lines kept by a longest
// common subsequence; both coordinate sequences are strictly increasing.
// When several maximal alignments exist, matches slide to the topmost
// position (smallest old line, then smallest new line).
//
//===----------------------------------------------------------------------===//

#ifndef WARNCAS_LINE_DIFF_HPP
#define WARNCAS_LINE_DIFF_HPP

#include "warncas/warning.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace warncas {

/// Pairs of matched 1-based line numbers, strictly increasing in both
/// coordinates. Matched lines are byte-identical in the two versions.
class LineMapping {
public:
  LineMapping() = default;
  explicit LineMapping(std::vector<std::pair<int, int>> pairs)
      : pairs_(std::move(pairs)) {}

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  size_t size() const { return pairs_.size(); }

  /// New-version line for an old-version line, if that line was matched.
  std::optional<int> dst(int old_line) const;
  /// Old-version line for a new-version line, if that line was matched.
  std::optional<int> src(int new_line) const;

private:
  std::vector<std::pair<int, int>> pairs_;
};

/// One contiguous region of change: lines [old_start, old_start+old_count)
/// were replaced by [new_start, new_start+new_count). Either count may be
/// zero (pure insertion or deletion). Line numbers are 1-based; for a
/// zero-count side the start is the line *before* which the change applies.
struct Hunk {
  int old_start = 0;
  int old_count = 0;
  int new_start = 0;
  int new_count = 0;
};

/// Longest-common-subsequence line mapping between two line vectors,
/// normalized so ties resolve to the topmost match.
LineMapping diff_lines(const std::vector<std::string>& old_lines,
                       const std::vector<std::string>& new_lines);

/// Changed regions between consecutive matched pairs.
std::vector<Hunk> hunks(const LineMapping& mapping, int old_count,
                        int new_count);

/// Unified-diff-style dump of the mapping: hunks with -/+ lines followed by
/// the full list of matched line pairs.
std::string dump_diff(const std::vector<std::string>& old_lines,
                      const std::vector<std::string>& new_lines,
                      const LineMapping& mapping);

/// Textual cascade: a V1 warning matches a V2 warning iff the V1 line maps
/// through its file's LineMapping to the V2 line and the conditions are
/// equal. `mappings` must hold one entry per file present in both versions;
/// warnings on files without an entry are routed unmatched with a
/// diagnostic. Matches are never flagged recovered.
CascadeReport cascade_text(const WarningSet& ws1, const WarningSet& ws2,
                           const std::map<std::string, LineMapping>& mappings);

} // namespace warncas

#endif // WARNCAS_LINE_DIFF_HPP
