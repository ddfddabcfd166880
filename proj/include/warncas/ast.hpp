//===-- ast.hpp - mini-C syntax trees -------------------------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Concrete-enough syntax trees for a C subset. Nodes carry a kind, a label
// (identifier, operator symbol, literal text, or raw line text for opaque
// statements), and a 1-based inclusive line span. Types and storage classes
// are not represented: `int d;` and `register int d;` parse identically.
// Trees are immutable after construction; matching code holds AstNode
// pointers into them.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace warncas {

enum class NodeKind {
  TranslationUnit,
  Function,
  Param,
  Block,
  Decl,
  If,
  While,
  For,
  Switch,
  Case,
  Return,
  Break,
  Continue,
  ExprStmt,
  Call,
  Assign,
  BinOp,
  UnOp,
  Ident,
  Literal,
  PreprocDirective,
  OpaqueStmt,
};

const char* to_string(NodeKind k);

struct Span {
  int start = 0; // 1-based, inclusive
  int end = 0;
};

struct AstNode {
  NodeKind kind = NodeKind::TranslationUnit;
  std::string label;
  Span span;
  std::vector<AstNode> children;

  bool is_leaf() const { return children.empty(); }
};

struct Ast {
  AstNode root;
  std::vector<std::string> source_lines;
};

/// Structural equality: kind, label, and children, spans ignored.
bool isomorphic(const AstNode& a, const AstNode& b);

/// Leaves (zero-child nodes) in depth-first left-to-right order.
std::vector<const AstNode*> leaves(const Ast& ast);

/// Leaves whose span starts on `line`. Comment/blank lines yield nothing.
std::vector<const AstNode*> nodes_at_line(const Ast& ast, int line);

size_t node_count(const AstNode& n);

void visit(const AstNode& n, const std::function<void(const AstNode&, int depth)>& fn,
           int depth = 0);

/// One node per line, indented two spaces per depth: `kind(label) [start..end]`.
std::string dump_ast(const Ast& ast);

/// Pretty-print back to parseable mini-C (placeholder `int` types). For trees
/// without OpaqueStmt nodes, reparsing the output yields an isomorphic tree.
std::string render(const Ast& ast);

} // namespace warncas
