//===-- mvicfg.hpp - Multi-version intraprocedural CFG --------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Per-version control-flow graphs built from syntax trees, merged into a
// single multi-version graph where statements present in both versions are
// stored once and every node and edge is tagged with the versions it
// belongs to. Warnings are embedded at their (version, file, line) node;
// the cascading pass walks shared nodes directly and runs a divergence
// region search for nodes exclusive to one version.
//
//===----------------------------------------------------------------------===//

#ifndef WARNCAS_MVICFG_HPP
#define WARNCAS_MVICFG_HPP

#include "warncas/ast.hpp"
#include "warncas/line_diff.hpp"
#include "warncas/warning.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace warncas {

/// Bitmask of versions a node or edge belongs to.
enum : unsigned { kV1 = 1u, kV2 = 2u };

inline unsigned version_bit(Version v) { return v == Version::V1 ? kV1 : kV2; }

struct CfgNode {
  int id = -1;
  std::string file;
  std::string function;
  /// Raw source text over the statement's line span (version-agnostic for
  /// shared nodes, whose text is identical in both versions by contract).
  std::string stmt_text;
  /// stmt_text with leading/trailing whitespace removed per line.
  std::string trimmed_text;
  /// Starting source line per version. Entry/exit nodes carry no line so
  /// they can never capture a statement's warning.
  std::optional<int> line_v1;
  std::optional<int> line_v2;
  unsigned versions = 0;
  /// Construction ordinal within the version's own CFG; -1 when the node
  /// does not belong to that version. Sorting by it recovers the exact
  /// node order of the single-version graph.
  int ord_v1 = -1;
  int ord_v2 = -1;
  std::vector<Warning> warnings_v1;
  std::vector<Warning> warnings_v2;
  bool is_entry = false;
  bool is_exit = false;

  bool in_version(Version v) const { return (versions & version_bit(v)) != 0; }
  bool shared() const { return versions == (kV1 | kV2); }
};

struct CfgEdge {
  int from = -1;
  int to = -1;
  unsigned versions = 0;

  bool in_version(Version v) const { return (versions & version_bit(v)) != 0; }
};

/// Entry/exit bookkeeping for one function of one file.
struct CfgFunction {
  std::string file;
  std::string function;
  int entry = -1;
  int exit = -1;
};

struct Mvicfg {
  std::vector<CfgNode> nodes;
  /// Edge order is meaningful: breadth-first searches expand neighbors in
  /// edge-insertion order, which makes tie-breaking deterministic.
  std::vector<CfgEdge> edges;
  std::vector<CfgFunction> functions;

  /// Per-node edge-index adjacency, filled by finalize().
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;

  int add_node(CfgNode n);
  /// Adds the version bit to an existing (from, to) edge or appends a new
  /// edge; returns the edge index.
  int add_edge(int from, int to, unsigned versions);
  void finalize();

  const CfgFunction* find_function(const std::string& file,
                                   const std::string& function) const;
};

/// Builds the single-version CFG of every function in one file's AST.
/// Top-level non-function constructs carry no control flow and produce no
/// nodes. Throws GraphError when two functions in the file share a name.
Mvicfg build_cfg(const Ast& ast, Version version, const std::string& file);

/// Merges per-file single-version graphs into one multi-version graph.
/// A statement node is shared iff its V1 line maps to its V2 line in the
/// file's LineMapping and the trimmed texts are equal; entry/exit nodes of
/// functions present in both versions are always shared. Throws GraphError
/// when one version contains duplicate (file, function) pairs.
Mvicfg build_mvicfg(const std::vector<Mvicfg>& cfgs_v1,
                    const std::vector<Mvicfg>& cfgs_v2,
                    const std::map<std::string, LineMapping>& mappings);

struct EmbedResult {
  /// warning id -> node id, for all warnings that found a home.
  std::map<std::string, int> node_of;
  std::vector<std::string> diagnostics;
};

/// Attaches each warning to the node of its version with matching file and
/// line (and function, when the warning names one). Warnings with no node
/// are reported in diagnostics. Throws GraphError when a warning's
/// (version, file, line) is claimed by more than one node.
EmbedResult embed_warnings(Mvicfg& g, const WarningSet& ws1,
                           const WarningSet& ws2);

/// Nearest node shared by both versions, searching backward (divergent) or
/// forward (convergent) from `node` along edges of `version`. Empty when
/// no shared node is reachable (function exclusive to one version).
std::optional<int> first_divergent_node(const Mvicfg& g, int node,
                                        Version version);
std::optional<int> first_convergent_node(const Mvicfg& g, int node,
                                         Version version);

struct DivConv {
  int div = -1;
  int conv = -1;
  /// V2-exclusive nodes on paths div -> conv, in BFS discovery order from
  /// div; used as the candidate pool for recovery.
  std::vector<int> between_v2;
};

/// Region between the nearest shared ancestor and descendant of a
/// version-exclusive node. Empty optional when either end is missing.
std::optional<DivConv> div_conv_region(const Mvicfg& g, int node,
                                       Version version);

struct CheckBetweenResult {
  /// The matched V2 warning, when recovery succeeded.
  std::optional<Warning> matched;
  int matched_node = -1;
  std::vector<std::string> diagnostics;
};

/// Recovery for a V1 warning whose node is V1-exclusive: searches the
/// divergence region for the nearest V2-exclusive node with equal trimmed
/// text; the warning matches iff that node carries a V2 warning with the
/// same condition.
CheckBetweenResult check_between(const Mvicfg& g, const Warning& w, int node);

/// Full control-flow cascade over an embedded graph. Shared nodes match
/// directly (never recovered); V1-exclusive nodes go through
/// check_between; matches found there are flagged recovered.
CascadeReport cascade_cfg(const WarningSet& ws1, const WarningSet& ws2,
                          const Mvicfg& g);

/// DOT rendering; node label is `trimmed_text\n[v1:L|v2:L|versions]` with
/// "-" for an absent line.
std::string to_dot(const Mvicfg& g);

} // namespace warncas

#endif // WARNCAS_MVICFG_HPP
