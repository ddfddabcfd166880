//===-- cfg_build.cpp - Single-version CFG construction from an AST -------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Frontier-based builder: a frontier is the set of nodes whose control
// falls through to the next statement. Structured statements consume and
// produce frontiers; break/continue/return divert theirs to the enclosing
// loop, switch, or function exit. Unreachable code still produces nodes
// (with no incoming edges) rather than failing.
//
//===----------------------------------------------------------------------===//

#include "warncas/error.hpp"
#include "warncas/mvicfg.hpp"
#include "warncas/source_tree.hpp"

#include <algorithm>
#include <set>

namespace warncas {

namespace {

std::string join_trimmed(const std::string& text) {
  std::string out;
  for (const std::string& line : split_lines(text)) {
    std::string t = trim(line);
    if (t.empty())
      continue;
    if (!out.empty())
      out += ' ';
    out += t;
  }
  return out;
}

class CfgBuilder {
public:
  CfgBuilder(Mvicfg& g, const Ast& ast, Version version,
             const std::string& file)
      : g_(g), ast_(ast), v_(version), bit_(version_bit(version)),
        file_(file) {}

  void build_function(const AstNode& fn) {
    function_ = fn.label;
    exit_ = -1;

    int entry = make_marker_node("<entry " + function_ + ">", true, false);
    exit_ = make_marker_node("<exit " + function_ + ">", false, true);
    g_.functions.push_back({file_, function_, entry, exit_});

    std::vector<int> frontier = {entry};
    const AstNode* body = nullptr;
    for (const AstNode& c : fn.children)
      if (c.kind == NodeKind::Block)
        body = &c;
    if (body)
      frontier = build_stmt(*body, std::move(frontier));
    connect(frontier, exit_);
  }

private:
  Mvicfg& g_;
  const Ast& ast_;
  Version v_;
  unsigned bit_;
  std::string file_;
  std::string function_;
  int exit_ = -1;
  std::vector<std::vector<int>*> break_stack_;
  std::vector<int> continue_stack_;
  std::set<std::pair<int, int>> edge_seen_;

  std::string span_text(Span s) const {
    const auto& lines = ast_.source_lines;
    std::string out;
    for (int l = s.start; l <= s.end && l <= static_cast<int>(lines.size());
         ++l) {
      if (!out.empty())
        out += '\n';
      out += lines[l - 1];
    }
    return out;
  }

  int make_marker_node(const std::string& text, bool entry, bool exit) {
    CfgNode n;
    n.file = file_;
    n.function = function_;
    n.stmt_text = text;
    n.trimmed_text = text;
    n.versions = bit_;
    n.is_entry = entry;
    n.is_exit = exit;
    return add_with_ordinal(std::move(n));
  }

  int make_stmt_node(Span span) {
    CfgNode n;
    n.file = file_;
    n.function = function_;
    n.stmt_text = span_text(span);
    n.trimmed_text = join_trimmed(n.stmt_text);
    n.versions = bit_;
    if (v_ == Version::V1)
      n.line_v1 = span.start;
    else
      n.line_v2 = span.start;
    return add_with_ordinal(std::move(n));
  }

  // In a single-version graph the construction ordinal is the node id
  // itself; the merge preserves it so the version's node order can always
  // be recovered from the merged graph.
  int add_with_ordinal(CfgNode n) {
    int id = g_.add_node(std::move(n));
    if (v_ == Version::V1)
      g_.nodes[id].ord_v1 = id;
    else
      g_.nodes[id].ord_v2 = id;
    return id;
  }

  void edge(int from, int to) {
    if (from < 0 || to < 0)
      return;
    if (!edge_seen_.insert({from, to}).second)
      return;
    g_.add_edge(from, to, bit_);
  }

  void connect(const std::vector<int>& frontier, int to) {
    for (int f : frontier)
      edge(f, to);
  }

  static void merge_into(std::vector<int>& dst, const std::vector<int>& src) {
    for (int n : src)
      if (std::find(dst.begin(), dst.end(), n) == dst.end())
        dst.push_back(n);
  }

  std::vector<int> build_stmt(const AstNode& s, std::vector<int> frontier) {
    switch (s.kind) {
    case NodeKind::Block: {
      for (const AstNode& c : s.children)
        frontier = build_stmt(c, std::move(frontier));
      return frontier;
    }
    case NodeKind::If:
      return build_if(s, std::move(frontier));
    case NodeKind::While:
      return build_while(s, std::move(frontier));
    case NodeKind::For:
      return build_for(s, std::move(frontier));
    case NodeKind::Switch:
      return build_switch(s, std::move(frontier));
    case NodeKind::Return: {
      int n = make_stmt_node(s.span);
      connect(frontier, n);
      edge(n, exit_);
      return {};
    }
    case NodeKind::Break: {
      int n = make_stmt_node(s.span);
      connect(frontier, n);
      if (!break_stack_.empty())
        break_stack_.back()->push_back(n);
      return {};
    }
    case NodeKind::Continue: {
      int n = make_stmt_node(s.span);
      connect(frontier, n);
      if (!continue_stack_.empty())
        edge(n, continue_stack_.back());
      return {};
    }
    default: {
      // Decl, Assign, ExprStmt, OpaqueStmt, PreprocDirective: one
      // straight-line node.
      int n = make_stmt_node(s.span);
      connect(frontier, n);
      return {n};
    }
    }
  }

  std::vector<int> build_if(const AstNode& s, std::vector<int> frontier) {
    const AstNode& cond_expr = s.children[0];
    int cond = make_stmt_node({s.span.start, cond_expr.span.end});
    connect(frontier, cond);

    std::vector<int> out;
    if (s.children.size() > 1)
      merge_into(out, build_stmt(s.children[1], {cond}));
    else
      merge_into(out, {cond});
    if (s.children.size() > 2)
      merge_into(out, build_stmt(s.children[2], {cond}));
    else
      merge_into(out, {cond}); // false branch falls through
    return out;
  }

  std::vector<int> build_while(const AstNode& s, std::vector<int> frontier) {
    const AstNode& cond_expr = s.children[0];
    int cond = make_stmt_node({s.span.start, cond_expr.span.end});
    connect(frontier, cond);

    std::vector<int> breaks;
    if (s.children.size() > 1) {
      break_stack_.push_back(&breaks);
      continue_stack_.push_back(cond);
      std::vector<int> body_out = build_stmt(s.children[1], {cond});
      continue_stack_.pop_back();
      break_stack_.pop_back();
      connect(body_out, cond);
    }
    std::vector<int> out = {cond};
    merge_into(out, breaks);
    return out;
  }

  std::vector<int> build_for(const AstNode& s, std::vector<int> frontier) {
    // Child slots are encoded in the label: 'i' init, 'c' cond, 'u'
    // update, 'b' body, in that order.
    const AstNode* init = nullptr;
    const AstNode* cond = nullptr;
    const AstNode* upd = nullptr;
    const AstNode* body = nullptr;
    size_t idx = 0;
    for (char ch : s.label) {
      const AstNode* child = &s.children[idx++];
      if (ch == 'i')
        init = child;
      else if (ch == 'c')
        cond = child;
      else if (ch == 'u')
        upd = child;
      else if (ch == 'b')
        body = child;
    }

    if (init) {
      int n = make_stmt_node(init->span);
      connect(frontier, n);
      frontier = {n};
    }
    int n_cond = -1;
    if (cond) {
      n_cond = make_stmt_node(cond->span);
      connect(frontier, n_cond);
      frontier = {n_cond};
    }
    // The update node exists before the body so continue can target it.
    int n_upd = upd ? make_stmt_node(upd->span) : -1;

    std::vector<int> breaks;
    int body_first = static_cast<int>(g_.nodes.size());
    std::vector<int> tail = frontier;
    if (body) {
      break_stack_.push_back(&breaks);
      continue_stack_.push_back(n_upd >= 0 ? n_upd : n_cond);
      tail = build_stmt(*body, frontier);
      continue_stack_.pop_back();
      break_stack_.pop_back();
    }
    if (n_upd >= 0) {
      connect(tail, n_upd);
      tail = {n_upd};
    }
    if (n_cond >= 0)
      connect(tail, n_cond);
    else if (body && body_first < static_cast<int>(g_.nodes.size()))
      connect(tail, body_first); // condition-free loop cycles to body head

    std::vector<int> out;
    if (n_cond >= 0)
      out.push_back(n_cond);
    merge_into(out, breaks);
    return out;
  }

  std::vector<int> build_switch(const AstNode& s, std::vector<int> frontier) {
    const AstNode& cond_expr = s.children[0];
    int cond = make_stmt_node({s.span.start, cond_expr.span.end});
    connect(frontier, cond);

    std::vector<int> breaks;
    break_stack_.push_back(&breaks);
    bool has_default = false;
    std::vector<int> fall; // trailing frontier of the previous case
    if (s.children.size() > 1) {
      for (const AstNode& item : s.children[1].children) {
        if (item.kind == NodeKind::Case) {
          if (item.label == "default")
            has_default = true;
          int head = make_stmt_node({item.span.start, item.span.start});
          edge(cond, head);
          connect(fall, head);
          fall = {head};
          for (const AstNode& st : item.children)
            fall = build_stmt(st, std::move(fall));
        } else {
          // Statement before the first case label: unreachable, still built.
          fall = build_stmt(item, std::move(fall));
        }
      }
    }
    break_stack_.pop_back();

    std::vector<int> out = std::move(fall);
    merge_into(out, breaks);
    if (!has_default)
      out.push_back(cond);
    return out;
  }
};

} // namespace

Mvicfg build_cfg(const Ast& ast, Version version, const std::string& file) {
  Mvicfg g;
  std::set<std::string> seen;
  for (const AstNode& top : ast.root.children) {
    if (top.kind != NodeKind::Function)
      continue;
    if (!seen.insert(top.label).second)
      throw GraphError("duplicate function '" + top.label + "' in " + file);
    CfgBuilder b(g, ast, version, file);
    b.build_function(top);
  }
  g.finalize();
  return g;
}

} // namespace warncas
