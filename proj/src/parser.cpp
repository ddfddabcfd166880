//===-- parser.cpp - mini-C lexer and recursive-descent parser ------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// The parser is deliberately forgiving: anything that is not grammar falls
// back to an OpaqueStmt leaf covering the rest of its line, so real-world C
// degrades gracefully instead of failing. The only fatal condition is brace
// imbalance, which would make block structure meaningless.
//
//===----------------------------------------------------------------------===//

#include "warncas/parser.hpp"

#include "warncas/error.hpp"
#include "warncas/source_tree.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace warncas {

namespace {

enum class Tok { Ident, Number, CharLit, StringLit, Punct, Preproc, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0; // 1-based
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(const std::string& text) {
  static const char* multi_punct[] = {
      "<<", ">>", "&&", "||", "==", "!=", "<=", ">=", "++",
      "--", "->", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^="};

  std::vector<Token> toks;
  size_t i = 0;
  int line = 1;
  bool at_line_start = true;
  const size_t n = text.size();

  while (i < n) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      at_line_start = true;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
      ++i;
      continue;
    }
    if (c == '#' && at_line_start) {
      size_t end = text.find('\n', i);
      if (end == std::string::npos)
        end = n;
      toks.push_back({Tok::Preproc, text.substr(i, end - i), line});
      i = end;
      continue;
    }
    at_line_start = false;
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      size_t end = text.find('\n', i);
      i = end == std::string::npos ? n : end;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      i += 2;
      while (i + 1 < n && !(text[i] == '*' && text[i + 1] == '/')) {
        if (text[i] == '\n')
          ++line;
        ++i;
      }
      i = i + 1 < n ? i + 2 : n;
      continue;
    }
    if (ident_start(c)) {
      size_t start = i;
      while (i < n && ident_char(text[i]))
        ++i;
      toks.push_back({Tok::Ident, text.substr(start, i - start), line});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < n && (ident_char(text[i]) || text[i] == '.'))
        ++i;
      toks.push_back({Tok::Number, text.substr(start, i - start), line});
      continue;
    }
    if (c == '\'' || c == '"') {
      char quote = c;
      size_t start = i++;
      while (i < n && text[i] != quote && text[i] != '\n') {
        if (text[i] == '\\' && i + 1 < n)
          ++i;
        ++i;
      }
      if (i < n && text[i] == quote)
        ++i;
      toks.push_back({quote == '\'' ? Tok::CharLit : Tok::StringLit,
                      text.substr(start, i - start), line});
      continue;
    }
    bool matched = false;
    for (const char* mp : multi_punct) {
      size_t len = 2;
      if (i + len <= n && text.compare(i, len, mp) == 0) {
        toks.push_back({Tok::Punct, mp, line});
        i += len;
        matched = true;
        break;
      }
    }
    if (matched)
      continue;
    toks.push_back({Tok::Punct, std::string(1, c), line});
    ++i;
  }
  toks.push_back({Tok::End, "", line});
  return toks;
}

const std::set<std::string>& stmt_keywords() {
  static const std::set<std::string> kw = {
      "if", "else", "while", "for", "switch", "case", "default",
      "return", "break", "continue", "do", "goto"};
  return kw;
}

class Parser {
public:
  Parser(std::vector<Token> toks, std::vector<std::string> lines,
         std::string filename)
      : toks_(std::move(toks)), lines_(std::move(lines)),
        filename_(std::move(filename)) {}

  Ast run() {
    Ast ast;
    ast.source_lines = lines_;
    ast.root.kind = NodeKind::TranslationUnit;
    ast.root.span = {1, std::max<int>(1, static_cast<int>(lines_.size()))};
    while (!at_end()) {
      if (cur().kind == Tok::Preproc) {
        ast.root.children.push_back(preproc_leaf());
        continue;
      }
      if (punct("}"))
        fail_here("unbalanced '}' at top level");
      if (punct("{")) {
        ast.root.children.push_back(parse_block());
        continue;
      }
      if (auto fn = try_function()) {
        ast.root.children.push_back(std::move(*fn));
        continue;
      }
      if (try_declaration(ast.root.children))
        continue;
      ast.root.children.push_back(opaque_line());
    }
    return ast;
  }

private:
  std::vector<Token> toks_;
  std::vector<std::string> lines_;
  std::string filename_;
  size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(size_t off = 1) const {
    size_t p = std::min(pos_ + off, toks_.size() - 1);
    return toks_[p];
  }
  bool at_end() const { return cur().kind == Tok::End; }
  bool punct(const char* p) const {
    return cur().kind == Tok::Punct && cur().text == p;
  }
  bool ident(const char* name) const {
    return cur().kind == Tok::Ident && cur().text == name;
  }
  void advance() {
    if (!at_end())
      ++pos_;
  }
  bool eat_punct(const char* p) {
    if (!punct(p))
      return false;
    advance();
    return true;
  }
  int prev_line() const { return toks_[pos_ ? pos_ - 1 : 0].line; }

  [[noreturn]] void fail_here(const std::string& what) const {
    std::ostringstream os;
    os << filename_ << ":" << cur().line << ": " << what;
    throw ParseError(os.str());
  }
  [[noreturn]] void fail_at(int line, const std::string& what) const {
    std::ostringstream os;
    os << filename_ << ":" << line << ": " << what;
    throw ParseError(os.str());
  }

  AstNode make(NodeKind kind, std::string label, int start, int end) {
    AstNode n;
    n.kind = kind;
    n.label = std::move(label);
    n.span = {start, end};
    return n;
  }

  AstNode preproc_leaf() {
    int line = cur().line;
    std::string label =
        line <= static_cast<int>(lines_.size()) ? trim(lines_[line - 1]) : cur().text;
    advance();
    return make(NodeKind::PreprocDirective, label, line, line);
  }

  AstNode opaque_line() {
    int line = cur().line;
    std::string label =
        line <= static_cast<int>(lines_.size()) ? trim(lines_[line - 1]) : cur().text;
    // Swallow the rest of the line but leave brace structure to the caller.
    while (!at_end() && cur().line == line && cur().kind != Tok::Preproc &&
           !punct("{") && !punct("}"))
      advance();
    return make(NodeKind::OpaqueStmt, label, line, line);
  }

  // --- functions -----------------------------------------------------------

  std::optional<AstNode> try_function() {
    size_t save = pos_;
    int start = cur().line;
    std::string name;
    int ident_count = 0;
    while (cur().kind == Tok::Ident || punct("*")) {
      if (cur().kind == Tok::Ident) {
        name = cur().text;
        ++ident_count;
      }
      advance();
    }
    if (ident_count < 1 || !punct("(") || stmt_keywords().count(name)) {
      pos_ = save;
      return std::nullopt;
    }
    size_t open = pos_;
    advance();
    int depth = 1;
    while (!at_end() && depth > 0) {
      if (punct("("))
        ++depth;
      else if (punct(")"))
        --depth;
      advance();
    }
    if (depth != 0 || !punct("{")) {
      pos_ = save;
      return std::nullopt;
    }

    AstNode fn = make(NodeKind::Function, name, start, start);
    parse_params(open + 1, pos_ - 1, fn.children);
    fn.children.push_back(parse_block());
    fn.span.end = fn.children.back().span.end;
    return fn;
  }

  // Token range [from, to) covers the parenthesized parameter list.
  void parse_params(size_t from, size_t to, std::vector<AstNode>& out) {
    size_t i = from;
    while (i < to) {
      size_t end = i;
      int depth = 0;
      while (end < to) {
        const Token& t = toks_[end];
        if (t.kind == Tok::Punct && t.text == "(")
          ++depth;
        else if (t.kind == Tok::Punct && t.text == ")")
          --depth;
        else if (t.kind == Tok::Punct && t.text == "," && depth == 0)
          break;
        ++end;
      }
      std::string name;
      for (size_t j = i; j < end; ++j)
        if (toks_[j].kind == Tok::Ident)
          name = toks_[j].text;
      bool lone_void = (end - i == 1 && toks_[i].text == "void");
      if (!name.empty() && !lone_void)
        out.push_back(make(NodeKind::Param, name, toks_[i].line,
                           toks_[end - 1].line));
      i = end + 1;
    }
  }

  // --- statements ----------------------------------------------------------

  AstNode parse_block() {
    int start = cur().line;
    advance(); // '{'
    AstNode block = make(NodeKind::Block, "", start, start);
    while (true) {
      if (at_end())
        fail_at(start, "missing '}' before end of file");
      if (punct("}")) {
        block.span.end = cur().line;
        advance();
        return block;
      }
      parse_statement(block.children);
    }
  }

  // Appends zero or more nodes (a multi-declarator declaration appends one
  // Decl per declarator; a bare ';' appends nothing).
  void parse_statement(std::vector<AstNode>& out) {
    if (cur().kind == Tok::Preproc) {
      out.push_back(preproc_leaf());
      return;
    }
    if (punct("{")) {
      out.push_back(parse_block());
      return;
    }
    if (eat_punct(";"))
      return;
    if (cur().kind == Tok::Ident) {
      const std::string& kw = cur().text;
      std::optional<AstNode> n;
      if (kw == "if")
        n = try_if();
      else if (kw == "while")
        n = try_while();
      else if (kw == "for")
        n = try_for();
      else if (kw == "switch")
        n = try_switch();
      else if (kw == "return")
        n = try_return();
      else if (kw == "break" || kw == "continue")
        n = try_jump();
      if (n) {
        out.push_back(std::move(*n));
        return;
      }
      if (kw == "if" || kw == "while" || kw == "for" || kw == "switch" ||
          kw == "return" || kw == "break" || kw == "continue") {
        out.push_back(opaque_line());
        return;
      }
    }
    if (try_declaration(out))
      return;
    if (auto e = try_expr_statement()) {
      out.push_back(std::move(*e));
      return;
    }
    out.push_back(opaque_line());
  }

  // Parse one nested statement (if/while/for body); multi-node results are
  // wrapped so control statements keep a single child per slot.
  std::optional<AstNode> parse_sub_statement() {
    std::vector<AstNode> tmp;
    parse_statement(tmp);
    if (tmp.empty())
      return std::nullopt;
    if (tmp.size() == 1)
      return std::move(tmp[0]);
    AstNode wrap = make(NodeKind::Block, "", tmp.front().span.start,
                        tmp.back().span.end);
    wrap.children = std::move(tmp);
    return wrap;
  }

  std::optional<AstNode> try_if() {
    size_t save = pos_;
    int start = cur().line;
    advance(); // 'if'
    if (!eat_punct("(")) {
      pos_ = save;
      return std::nullopt;
    }
    auto cond = parse_expr();
    if (!cond || !eat_punct(")")) {
      pos_ = save;
      return std::nullopt;
    }
    AstNode n = make(NodeKind::If, "", start, prev_line());
    n.children.push_back(std::move(*cond));
    if (auto then_n = parse_sub_statement())
      n.children.push_back(std::move(*then_n));
    n.span.end = prev_line();
    if (ident("else")) {
      advance();
      if (auto else_n = parse_sub_statement())
        n.children.push_back(std::move(*else_n));
      n.span.end = prev_line();
    }
    return n;
  }

  std::optional<AstNode> try_while() {
    size_t save = pos_;
    int start = cur().line;
    advance();
    if (!eat_punct("(")) {
      pos_ = save;
      return std::nullopt;
    }
    auto cond = parse_expr();
    if (!cond || !eat_punct(")")) {
      pos_ = save;
      return std::nullopt;
    }
    AstNode n = make(NodeKind::While, "", start, prev_line());
    n.children.push_back(std::move(*cond));
    if (auto body = parse_sub_statement())
      n.children.push_back(std::move(*body));
    n.span.end = prev_line();
    return n;
  }

  std::optional<AstNode> try_for() {
    size_t save = pos_;
    int start = cur().line;
    advance();
    if (!eat_punct("(")) {
      pos_ = save;
      return std::nullopt;
    }
    AstNode n = make(NodeKind::For, "", start, start);
    // init
    if (!punct(";")) {
      std::vector<AstNode> decls;
      if (try_declaration(decls) && decls.size() == 1) {
        n.label += 'i';
        n.children.push_back(std::move(decls[0]));
      } else if (decls.empty()) {
        auto e = parse_expr();
        if (!e || !eat_punct(";")) {
          pos_ = save;
          return std::nullopt;
        }
        n.label += 'i';
        n.children.push_back(as_statement(std::move(*e)));
      } else { // multi-declarator for-init is out of grammar
        pos_ = save;
        return std::nullopt;
      }
    } else {
      advance();
    }
    // condition
    if (!punct(";")) {
      auto c = parse_expr();
      if (!c || !eat_punct(";")) {
        pos_ = save;
        return std::nullopt;
      }
      n.label += 'c';
      n.children.push_back(std::move(*c));
    } else {
      advance();
    }
    // update
    if (!punct(")")) {
      auto u = parse_expr();
      if (!u || !eat_punct(")")) {
        pos_ = save;
        return std::nullopt;
      }
      n.label += 'u';
      n.children.push_back(std::move(*u));
    } else {
      advance();
    }
    if (auto body = parse_sub_statement()) {
      n.label += 'b';
      n.children.push_back(std::move(*body));
    }
    n.span.end = prev_line();
    return n;
  }

  std::optional<AstNode> try_switch() {
    size_t save = pos_;
    int start = cur().line;
    advance();
    if (!eat_punct("(")) {
      pos_ = save;
      return std::nullopt;
    }
    auto cond = parse_expr();
    if (!cond || !eat_punct(")") || !punct("{")) {
      pos_ = save;
      return std::nullopt;
    }
    AstNode n = make(NodeKind::Switch, "", start, start);
    n.children.push_back(std::move(*cond));

    int body_start = cur().line;
    advance(); // '{'
    AstNode body = make(NodeKind::Block, "", body_start, body_start);
    AstNode* current_case = nullptr;
    while (true) {
      if (at_end())
        fail_at(body_start, "missing '}' before end of file");
      if (punct("}")) {
        body.span.end = cur().line;
        advance();
        break;
      }
      if (ident("case") || ident("default")) {
        int cline = cur().line;
        std::string label;
        if (ident("default")) {
          advance();
          label = "default";
        } else {
          advance();
          bool first = true;
          while (!at_end() && !punct(":")) {
            if (!first)
              label += " ";
            label += cur().text;
            first = false;
            advance();
          }
        }
        if (!eat_punct(":"))
          fail_at(cline, "missing ':' after case label");
        body.children.push_back(make(NodeKind::Case, label, cline, cline));
        current_case = &body.children.back();
        continue;
      }
      std::vector<AstNode>& sink =
          current_case ? current_case->children : body.children;
      parse_statement(sink);
      if (current_case && !current_case->children.empty())
        current_case->span.end = current_case->children.back().span.end;
    }
    n.children.push_back(std::move(body));
    n.span.end = prev_line();
    return n;
  }

  std::optional<AstNode> try_return() {
    size_t save = pos_;
    int start = cur().line;
    advance();
    AstNode n = make(NodeKind::Return, "", start, start);
    if (eat_punct(";")) {
      n.span.end = prev_line();
      return n;
    }
    auto e = parse_expr();
    if (!e || !eat_punct(";")) {
      pos_ = save;
      return std::nullopt;
    }
    n.children.push_back(std::move(*e));
    n.span.end = prev_line();
    return n;
  }

  std::optional<AstNode> try_jump() {
    size_t save = pos_;
    int start = cur().line;
    NodeKind kind = cur().text == "break" ? NodeKind::Break : NodeKind::Continue;
    advance();
    if (!eat_punct(";")) {
      pos_ = save;
      return std::nullopt;
    }
    return make(kind, "", start, prev_line());
  }

  // An expression used in statement position: assignments stand on their
  // own, everything else is wrapped in ExprStmt.
  AstNode as_statement(AstNode expr_node) {
    if (expr_node.kind == NodeKind::Assign)
      return expr_node;
    AstNode n = make(NodeKind::ExprStmt, "", expr_node.span.start,
                     expr_node.span.end);
    n.children.push_back(std::move(expr_node));
    return n;
  }

  std::optional<AstNode> try_expr_statement() {
    size_t save = pos_;
    auto e = parse_expr();
    if (!e || !eat_punct(";")) {
      pos_ = save;
      return std::nullopt;
    }
    AstNode n = as_statement(std::move(*e));
    n.span.end = prev_line();
    return n;
  }

  // --- declarations --------------------------------------------------------

  // A statement is a declaration when a run of identifiers and '*' ends at
  // '=', ',', ';' or '[' with at least two identifiers (type + name), or when
  // the run starts with a known type keyword. One Decl node per declarator.
  bool try_declaration(std::vector<AstNode>& out) {
    size_t save = pos_;
    int start = cur().line;
    std::vector<std::string> idents;
    while (cur().kind == Tok::Ident || punct("*")) {
      if (cur().kind == Tok::Ident) {
        if (stmt_keywords().count(cur().text)) {
          pos_ = save;
          return false;
        }
        idents.push_back(cur().text);
      }
      advance();
    }
    bool at_decl_tail = punct("=") || punct(",") || punct(";") || punct("[");
    if (!at_decl_tail || idents.size() < 2) {
      pos_ = save;
      return false;
    }

    size_t emitted_at = out.size();
    std::string name = idents.back();
    while (true) {
      AstNode decl = make(NodeKind::Decl, name, start, start);
      if (punct("[")) { // array declarator; the size is not modeled
        advance();
        int depth = 1;
        while (!at_end() && depth > 0) {
          if (punct("["))
            ++depth;
          else if (punct("]"))
            --depth;
          advance();
        }
      }
      if (eat_punct("=")) {
        auto init = parse_assign();
        if (!init) {
          out.resize(emitted_at);
          pos_ = save;
          return false;
        }
        decl.children.push_back(std::move(*init));
      }
      out.push_back(std::move(decl));
      if (eat_punct(",")) {
        while (punct("*"))
          advance();
        if (cur().kind != Tok::Ident || stmt_keywords().count(cur().text)) {
          out.resize(emitted_at);
          pos_ = save;
          return false;
        }
        name = cur().text;
        advance();
        continue;
      }
      break;
    }
    if (!eat_punct(";")) {
      out.resize(emitted_at);
      pos_ = save;
      return false;
    }
    int end = prev_line();
    for (size_t i = emitted_at; i < out.size(); ++i)
      out[i].span = {start, end};
    return true;
  }

  // --- expressions ---------------------------------------------------------

  std::optional<AstNode> parse_expr() { return parse_assign(); }

  std::optional<AstNode> parse_assign() {
    auto lhs = parse_binary(0);
    if (!lhs)
      return std::nullopt;
    static const std::set<std::string> assign_ops = {"=", "+=", "-=",
                                                     "*=", "/=", "%="};
    if (cur().kind == Tok::Punct && assign_ops.count(cur().text)) {
      std::string op = cur().text;
      advance();
      auto rhs = parse_assign();
      if (!rhs)
        return std::nullopt;
      AstNode n = make(NodeKind::Assign, op, lhs->span.start, rhs->span.end);
      n.children.push_back(std::move(*lhs));
      n.children.push_back(std::move(*rhs));
      return n;
    }
    return lhs;
  }

  static int binop_prec(const std::string& op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*" || op == "/" || op == "%") return 6;
    return 0;
  }

  std::optional<AstNode> parse_binary(int min_prec) {
    auto lhs = parse_unary();
    if (!lhs)
      return std::nullopt;
    while (cur().kind == Tok::Punct) {
      int prec = binop_prec(cur().text);
      if (prec == 0 || prec < min_prec)
        break;
      std::string op = cur().text;
      advance();
      auto rhs = parse_binary(prec + 1);
      if (!rhs)
        return std::nullopt;
      AstNode n = make(NodeKind::BinOp, op, lhs->span.start, rhs->span.end);
      n.children.push_back(std::move(*lhs));
      n.children.push_back(std::move(*rhs));
      lhs = std::move(n);
    }
    return lhs;
  }

  std::optional<AstNode> parse_unary() {
    static const std::set<std::string> unary_ops = {"!", "-", "++",
                                                    "--", "*", "&"};
    if (cur().kind == Tok::Punct && unary_ops.count(cur().text)) {
      std::string op = cur().text;
      int start = cur().line;
      advance();
      auto operand = parse_unary();
      if (!operand)
        return std::nullopt;
      AstNode n = make(NodeKind::UnOp, op, start, operand->span.end);
      n.children.push_back(std::move(*operand));
      return n;
    }
    return parse_postfix();
  }

  std::optional<AstNode> parse_postfix() {
    auto base = parse_primary();
    if (!base)
      return std::nullopt;
    while (true) {
      if (punct("(") && base->kind == NodeKind::Ident && base->is_leaf()) {
        advance();
        AstNode call =
            make(NodeKind::Call, base->label, base->span.start, base->span.end);
        if (!punct(")")) {
          while (true) {
            auto arg = parse_assign();
            if (!arg)
              return std::nullopt;
            call.children.push_back(std::move(*arg));
            if (eat_punct(","))
              continue;
            break;
          }
        }
        if (!eat_punct(")"))
          return std::nullopt;
        call.span.end = prev_line();
        base = std::move(call);
        continue;
      }
      if (punct("[")) {
        advance();
        auto idx = parse_expr();
        if (!idx || !eat_punct("]"))
          return std::nullopt;
        AstNode n = make(NodeKind::BinOp, "[]", base->span.start, prev_line());
        n.children.push_back(std::move(*base));
        n.children.push_back(std::move(*idx));
        base = std::move(n);
        continue;
      }
      if (punct("->") || punct(".")) {
        std::string op = cur().text;
        advance();
        if (cur().kind != Tok::Ident)
          return std::nullopt;
        AstNode member =
            make(NodeKind::Ident, cur().text, cur().line, cur().line);
        advance();
        AstNode n = make(NodeKind::BinOp, op, base->span.start, prev_line());
        n.children.push_back(std::move(*base));
        n.children.push_back(std::move(member));
        base = std::move(n);
        continue;
      }
      if (punct("++") || punct("--")) {
        std::string op = cur().text;
        advance();
        AstNode n = make(NodeKind::UnOp, op, base->span.start, prev_line());
        n.children.push_back(std::move(*base));
        base = std::move(n);
        continue;
      }
      return base;
    }
  }

  std::optional<AstNode> parse_primary() {
    if (cur().kind == Tok::Ident && !stmt_keywords().count(cur().text)) {
      AstNode n = make(NodeKind::Ident, cur().text, cur().line, cur().line);
      advance();
      return n;
    }
    if (cur().kind == Tok::Number || cur().kind == Tok::CharLit ||
        cur().kind == Tok::StringLit) {
      AstNode n = make(NodeKind::Literal, cur().text, cur().line, cur().line);
      advance();
      return n;
    }
    if (punct("(")) {
      advance();
      auto inner = parse_expr();
      if (!inner || !eat_punct(")"))
        return std::nullopt;
      return inner;
    }
    return std::nullopt;
  }
};

} // namespace

Ast parse_source(const std::string& text, const std::string& filename) {
  return Parser(lex(text), split_lines(text), filename).run();
}

} // namespace warncas
