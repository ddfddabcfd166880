//===-- ast_diff.hpp - Two-phase AST matching -----------------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Structural matching between two syntax trees in two phases: a top-down
// pass that pairs large isomorphic subtrees greedily by height, then a
// bottom-up pass that pairs container nodes whose children already agree
// (dice coefficient over matched descendants) and recovers identical
// leaves inside newly paired containers. The result is a one-to-one node
// mapping; no edit script is derived.
//
//===----------------------------------------------------------------------===//

#ifndef WARNCAS_AST_DIFF_HPP
#define WARNCAS_AST_DIFF_HPP

#include "warncas/ast.hpp"
#include "warncas/warning.hpp"

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace warncas {

struct MatchParams {
  /// Minimum subtree height considered by the top-down phase. Leaves have
  /// height 1, so the default skips bare leaves.
  int min_height = 2;
  /// A bottom-up container pair is accepted only if its dice similarity is
  /// strictly greater than this.
  double min_dice = 0.5;
  /// Containers larger than this skip the leaf recovery pass.
  int max_size = 100;
};

/// One-to-one mapping between nodes of two trees. Pointers refer into the
/// Ast objects given to match_asts, which must outlive the mapping.
class NodeMapping {
public:
  void add(const AstNode* a, const AstNode* b);
  bool mapped_src(const AstNode* a) const { return fwd_.count(a) != 0; }
  bool mapped_dst(const AstNode* b) const { return rev_.count(b) != 0; }
  const AstNode* dst(const AstNode* a) const;
  const AstNode* src(const AstNode* b) const;
  const std::vector<std::pair<const AstNode*, const AstNode*>>& pairs() const {
    return pairs_;
  }
  size_t size() const { return pairs_.size(); }

private:
  std::vector<std::pair<const AstNode*, const AstNode*>> pairs_;
  std::unordered_map<const AstNode*, const AstNode*> fwd_;
  std::unordered_map<const AstNode*, const AstNode*> rev_;
};

/// Matches two trees. Deterministic: ties are broken by source position and
/// then by preorder index.
NodeMapping match_asts(const Ast& t1, const Ast& t2,
                       const MatchParams& params = {});

/// Human-readable listing of a mapping, one "kind@line <-> kind@line" per
/// pair, in t1 preorder.
std::string dump_mapping(const Ast& t1, const Ast& t2,
                         const NodeMapping& mapping);

/// AST cascade over one file pair: a V1 warning matches a V2 warning when
/// some leaf on the warning's line is mapped to a leaf on the V2 warning's
/// line and the conditions are equal. Several candidate V2 warnings keep
/// the smallest |line delta| (then the smallest V2 line), logging the rest.
/// Both warning sets must refer to the file the trees were parsed from.
CascadeReport cascade_ast(const WarningSet& ws1, const WarningSet& ws2,
                          const Ast& t1, const Ast& t2,
                          const NodeMapping& mapping);

} // namespace warncas

#endif // WARNCAS_AST_DIFF_HPP
