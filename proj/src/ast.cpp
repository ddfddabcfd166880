//===-- ast.cpp - AST queries, dumping, rendering --------------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "warncas/ast.hpp"

#include <sstream>

namespace warncas {

const char* to_string(NodeKind k) {
  switch (k) {
  case NodeKind::TranslationUnit: return "TranslationUnit";
  case NodeKind::Function: return "Function";
  case NodeKind::Param: return "Param";
  case NodeKind::Block: return "Block";
  case NodeKind::Decl: return "Decl";
  case NodeKind::If: return "If";
  case NodeKind::While: return "While";
  case NodeKind::For: return "For";
  case NodeKind::Switch: return "Switch";
  case NodeKind::Case: return "Case";
  case NodeKind::Return: return "Return";
  case NodeKind::Break: return "Break";
  case NodeKind::Continue: return "Continue";
  case NodeKind::ExprStmt: return "ExprStmt";
  case NodeKind::Call: return "Call";
  case NodeKind::Assign: return "Assign";
  case NodeKind::BinOp: return "BinOp";
  case NodeKind::UnOp: return "UnOp";
  case NodeKind::Ident: return "Ident";
  case NodeKind::Literal: return "Literal";
  case NodeKind::PreprocDirective: return "PreprocDirective";
  case NodeKind::OpaqueStmt: return "OpaqueStmt";
  }
  return "?";
}

bool isomorphic(const AstNode& a, const AstNode& b) {
  if (a.kind != b.kind || a.label != b.label ||
      a.children.size() != b.children.size())
    return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!isomorphic(a.children[i], b.children[i]))
      return false;
  return true;
}

void visit(const AstNode& n, const std::function<void(const AstNode&, int)>& fn,
           int depth) {
  fn(n, depth);
  for (const AstNode& c : n.children)
    visit(c, fn, depth + 1);
}

std::vector<const AstNode*> leaves(const Ast& ast) {
  std::vector<const AstNode*> out;
  visit(ast.root, [&](const AstNode& n, int) {
    if (n.is_leaf())
      out.push_back(&n);
  });
  return out;
}

std::vector<const AstNode*> nodes_at_line(const Ast& ast, int line) {
  std::vector<const AstNode*> out;
  visit(ast.root, [&](const AstNode& n, int) {
    if (n.is_leaf() && n.span.start == line)
      out.push_back(&n);
  });
  return out;
}

size_t node_count(const AstNode& n) {
  size_t count = 0;
  visit(n, [&](const AstNode&, int) { ++count; });
  return count;
}

std::string dump_ast(const Ast& ast) {
  std::ostringstream os;
  visit(ast.root, [&](const AstNode& n, int depth) {
    for (int i = 0; i < depth; ++i)
      os << "  ";
    os << to_string(n.kind) << "(" << n.label << ") [" << n.span.start << ".."
       << n.span.end << "]\n";
  });
  return os.str();
}

namespace {

class Renderer {
public:
  std::string run(const AstNode& root) {
    for (const AstNode& c : root.children)
      stmt(c, 0);
    return os.str();
  }

private:
  std::ostringstream os;

  void indent(int level) {
    for (int i = 0; i < level; ++i)
      os << "    ";
  }

  std::string expr(const AstNode& n) {
    switch (n.kind) {
    case NodeKind::Ident:
    case NodeKind::Literal:
      return n.label;
    case NodeKind::Call: {
      std::string s = n.label + "(";
      for (size_t i = 0; i < n.children.size(); ++i) {
        if (i)
          s += ", ";
        s += expr(n.children[i]);
      }
      return s + ")";
    }
    case NodeKind::BinOp:
      if (n.label == "[]")
        return expr(n.children[0]) + "[" + expr(n.children[1]) + "]";
      if (n.label == "->" || n.label == ".")
        return expr(n.children[0]) + n.label + expr(n.children[1]);
      return "(" + expr(n.children[0]) + " " + n.label + " " +
             expr(n.children[1]) + ")";
    case NodeKind::UnOp:
      return "(" + n.label + expr(n.children[0]) + ")";
    case NodeKind::Assign:
      return "(" + expr(n.children[0]) + " " + n.label + " " +
             expr(n.children[1]) + ")";
    default:
      return n.label; // synthetic trees only
    }
  }

  // Statement-position expression: no outer parentheses around assignments.
  std::string stmt_expr(const AstNode& n) {
    if (n.kind == NodeKind::Assign)
      return expr(n.children[0]) + " " + n.label + " " + expr(n.children[1]);
    if (n.kind == NodeKind::ExprStmt)
      return expr(n.children[0]);
    if (n.kind == NodeKind::Decl) {
      std::string s = "int " + n.label;
      if (!n.children.empty())
        s += " = " + expr(n.children[0]);
      return s;
    }
    return expr(n.kind == NodeKind::ExprStmt ? n.children[0] : n);
  }

  // Render a sub-statement of if/while/for: block keeps braces, a single
  // statement stays brace-free so reparsing preserves the shape.
  void sub_stmt(const AstNode* n, int level) {
    if (!n) {
      indent(level + 1);
      os << ";\n";
      return;
    }
    if (n->kind == NodeKind::Block) {
      block(*n, level);
    } else {
      stmt(*n, level + 1);
    }
  }

  void block(const AstNode& b, int level) {
    indent(level);
    os << "{\n";
    for (const AstNode& c : b.children)
      stmt(c, level + 1);
    indent(level);
    os << "}\n";
  }

  void stmt(const AstNode& n, int level) {
    switch (n.kind) {
    case NodeKind::Function: {
      os << "int " << n.label << "(";
      bool first = true;
      const AstNode* body = nullptr;
      for (const AstNode& c : n.children) {
        if (c.kind == NodeKind::Param) {
          if (!first)
            os << ", ";
          os << "int " << c.label;
          first = false;
        } else {
          body = &c;
        }
      }
      os << ")\n";
      if (body)
        block(*body, 0);
      return;
    }
    case NodeKind::Block:
      block(n, level);
      return;
    case NodeKind::Decl:
      indent(level);
      os << "int " << n.label;
      if (!n.children.empty())
        os << " = " << expr(n.children[0]);
      os << ";\n";
      return;
    case NodeKind::Assign:
      indent(level);
      os << stmt_expr(n) << ";\n";
      return;
    case NodeKind::ExprStmt:
      indent(level);
      os << expr(n.children[0]) << ";\n";
      return;
    case NodeKind::If: {
      indent(level);
      os << "if (" << expr(n.children[0]) << ")\n";
      const AstNode* then_n = n.children.size() > 1 ? &n.children[1] : nullptr;
      sub_stmt(then_n, level);
      if (n.children.size() > 2) {
        indent(level);
        os << "else\n";
        sub_stmt(&n.children[2], level);
      }
      return;
    }
    case NodeKind::While:
      indent(level);
      os << "while (" << expr(n.children[0]) << ")\n";
      sub_stmt(n.children.size() > 1 ? &n.children[1] : nullptr, level);
      return;
    case NodeKind::For: {
      // Label records which header slots exist: subset of "icu" plus 'b'
      // when a body statement is present.
      size_t idx = 0;
      std::string init, cond, step;
      const AstNode* body = nullptr;
      for (char slot : n.label) {
        if (slot == 'i')
          init = stmt_expr(n.children[idx++]);
        else if (slot == 'c')
          cond = expr(n.children[idx++]);
        else if (slot == 'u')
          step = expr(n.children[idx++]);
        else if (slot == 'b')
          body = &n.children[idx++];
      }
      indent(level);
      os << "for (" << init << "; " << cond << "; " << step << ")\n";
      sub_stmt(body, level);
      return;
    }
    case NodeKind::Switch: {
      indent(level);
      os << "switch (" << expr(n.children[0]) << ")\n";
      if (n.children.size() > 1)
        block(n.children[1], level);
      return;
    }
    case NodeKind::Case:
      indent(level);
      if (n.label == "default")
        os << "default:\n";
      else
        os << "case " << n.label << ":\n";
      for (const AstNode& c : n.children)
        stmt(c, level + 1);
      return;
    case NodeKind::Return:
      indent(level);
      if (n.children.empty())
        os << "return;\n";
      else
        os << "return " << expr(n.children[0]) << ";\n";
      return;
    case NodeKind::Break:
      indent(level);
      os << "break;\n";
      return;
    case NodeKind::Continue:
      indent(level);
      os << "continue;\n";
      return;
    case NodeKind::PreprocDirective:
      os << n.label << "\n";
      return;
    case NodeKind::OpaqueStmt:
      indent(level);
      os << n.label << "\n";
      return;
    default:
      indent(level);
      os << expr(n) << ";\n";
      return;
    }
  }
};

} // namespace

std::string render(const Ast& ast) { return Renderer().run(ast.root); }

} // namespace warncas
