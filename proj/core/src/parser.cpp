/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "qct/error.hpp"
#include "qct/ir.hpp"

namespace qct {

namespace {

enum class Tok { Ident, Int, Real, Str, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t int_value = 0;
  double real_value = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::End) break;
    }
    return out;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
  }

  Token next() {
    if (pos_ >= src_.size()) return Token{Tok::End, "", 0, 0.0, line_, col_};
    const int line = line_;
    const int col = col_;
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        ++pos_;
        ++col_;
      }
      return Token{Tok::Ident, std::string(src_.substr(start, pos_ - start)),
                   0, 0.0, line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number(line, col);
    if (c == '"') return string_lit(line, col);
    // Two-character operators first.
    static constexpr std::string_view kTwo[] = {"==", "!=", "<=", ">="};
    if (pos_ + 1 < src_.size()) {
      const std::string_view pair = src_.substr(pos_, 2);
      for (std::string_view op : kTwo) {
        if (pair == op) {
          pos_ += 2;
          col_ += 2;
          return Token{Tok::Punct, std::string(op), 0, 0.0, line, col};
        }
      }
    }
    static constexpr std::string_view kOne = "(){}[],:;<>+-*=";
    if (kOne.find(c) != std::string_view::npos) {
      ++pos_;
      ++col_;
      return Token{Tok::Punct, std::string(1, c), 0, 0.0, line, col};
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line,
                      col);
  }

  Token number(int line, int col) {
    const std::size_t start = pos_;
    bool real = false;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
      ++col_;
    }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      real = true;
      ++pos_;
      ++col_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++col_;
      }
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      real = true;
      ++pos_;
      ++col_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        ++pos_;
        ++col_;
      }
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++col_;
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    Token t{real ? Tok::Real : Tok::Int, text, 0, 0.0, line, col};
    if (real) {
      t.real_value = std::strtod(text.c_str(), nullptr);
    } else {
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                     t.int_value);
      if (ec != std::errc{}) {
        throw SyntaxError("integer literal out of range", line, col);
      }
    }
    return t;
  }

  Token string_lit(int line, int col) {
    ++pos_;  // opening quote
    ++col_;
    const std::size_t start = pos_;
    while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
      ++pos_;
      ++col_;
    }
    if (pos_ >= src_.size() || src_[pos_] != '"') {
      throw SyntaxError("unterminated string literal", line, col);
    }
    const std::string text(src_.substr(start, pos_ - start));
    ++pos_;  // closing quote
    ++col_;
    return Token{Tok::Str, text, 0, 0.0, line, col};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::set<std::string> kKeywords = {
    "program", "expects", "if",   "else", "return", "measure",
    "check_state_eq", "check_state_gt", "check_state_lt",
    "int", "real", "qreg"};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  Program run() {
    expect_ident("program");
    program_.name = expect_name("program name");
    expect_punct("(");
    if (!at_punct(")")) {
      do {
        parse_param();
      } while (accept_punct(","));
    }
    expect_punct(")");
    if (at_ident("expects")) {
      advance();
      program_.reference_dist = parse_dist(program_.num_qubits());
    }
    program_.body = parse_block();
    if (peek().kind != Tok::End) {
      fail("trailing input after program body");
    }
    assign_branch_sites(program_);
    ValidationReport report = validate_program(program_);
    if (!report.ok()) {
      const ValidationIssue& issue = report.issues.front();
      std::string msg = issue.message;
      if (issue.span.line > 0) {
        msg += " (line " + std::to_string(issue.span.line) + ", column " +
               std::to_string(issue.span.column) + ")";
      }
      throw ValidationError(msg);
    }
    return std::move(program_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw SyntaxError(msg, t.line, t.column);
  }

  bool at_punct(std::string_view s) const {
    return peek().kind == Tok::Punct && peek().text == s;
  }

  bool at_ident(std::string_view s) const {
    return peek().kind == Tok::Ident && peek().text == s;
  }

  bool accept_punct(std::string_view s) {
    if (!at_punct(s)) return false;
    advance();
    return true;
  }

  void expect_punct(std::string_view s) {
    if (!at_punct(s)) fail("expected '" + std::string(s) + "'");
    advance();
  }

  void expect_ident(std::string_view s) {
    if (!at_ident(s)) fail("expected '" + std::string(s) + "'");
    advance();
  }

  std::string expect_name(const std::string& what) {
    if (peek().kind != Tok::Ident) fail("expected " + what);
    std::string name = peek().text;
    if (kKeywords.count(name)) {
      fail("keyword '" + name + "' cannot be used as " + what);
    }
    advance();
    return name;
  }

  std::int64_t expect_int() {
    if (peek().kind != Tok::Int) fail("expected an integer");
    const std::int64_t v = peek().int_value;
    advance();
    return v;
  }

  double expect_number() {
    bool negative = false;
    if (at_punct("-")) {
      negative = true;
      advance();
    }
    double v;
    if (peek().kind == Tok::Int) {
      v = static_cast<double>(peek().int_value);
    } else if (peek().kind == Tok::Real) {
      v = peek().real_value;
    } else {
      fail("expected a number");
    }
    advance();
    return negative ? -v : v;
  }

  std::string expect_string() {
    if (peek().kind != Tok::Str) fail("expected a quoted bitstring");
    std::string s = peek().text;
    advance();
    return s;
  }

  void parse_param() {
    const Token& name_tok = peek();
    std::string name = expect_name("a parameter name");
    expect_punct(":");
    Param param;
    param.name = std::move(name);
    if (at_ident("int")) {
      advance();
      param.kind = ParamKind::ClassicalInt;
    } else if (at_ident("real")) {
      advance();
      param.kind = ParamKind::ClassicalReal;
    } else if (at_ident("qreg")) {
      advance();
      expect_punct("(");
      const std::int64_t n = expect_int();
      expect_punct(")");
      param.kind = ParamKind::QReg;
      param.qubits = static_cast<int>(n);
    } else {
      fail("expected a parameter type (int, real or qreg(n))");
    }
    (void)name_tok;
    program_.params.push_back(std::move(param));
  }

  std::string expect_qreg_name() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail("expected the quantum register name");
    const Param* param = program_.find_param(t.text);
    if (param == nullptr || param->kind != ParamKind::QReg) {
      fail("'" + t.text + "' is not the declared quantum register");
    }
    advance();
    return t.text;
  }

  std::vector<double> parse_dist(int n) {
    expect_punct("{");
    std::vector<double> dist(std::size_t{1} << n, 0.0);
    std::set<std::size_t> seen;
    if (!at_punct("}")) {
      do {
        const Token& key_tok = peek();
        const std::string key = expect_string();
        std::size_t index;
        try {
          index = parse_outcome_bits(key, n);
        } catch (const ValidationError& e) {
          throw SyntaxError(e.what(), key_tok.line, key_tok.column);
        }
        if (!seen.insert(index).second) {
          throw SyntaxError("duplicate outcome \"" + key + "\"", key_tok.line,
                            key_tok.column);
        }
        expect_punct(":");
        dist[index] = expect_number();
      } while (accept_punct(","));
    }
    expect_punct("}");
    return dist;
  }

  std::vector<ProbBound> parse_bounds(int n) {
    expect_punct("[");
    std::vector<ProbBound> bounds;
    do {
      expect_punct("(");
      const Token& key_tok = peek();
      const std::string key = expect_string();
      std::size_t index;
      try {
        index = parse_outcome_bits(key, n);
      } catch (const ValidationError& e) {
        throw SyntaxError(e.what(), key_tok.line, key_tok.column);
      }
      expect_punct(",");
      const double bound = expect_number();
      expect_punct(")");
      bounds.push_back(ProbBound{index, bound});
    } while (accept_punct(","));
    expect_punct("]");
    return bounds;
  }

  ClassicalExprPtr parse_factor() {
    if (peek().kind == Tok::Int) {
      auto e = ClassicalExpr::int_lit(peek().int_value);
      advance();
      return e;
    }
    if (peek().kind == Tok::Real) {
      auto e = ClassicalExpr::real_lit(peek().real_value);
      advance();
      return e;
    }
    if (peek().kind == Tok::Ident) {
      auto e = ClassicalExpr::make_name(peek().text);
      advance();
      return e;
    }
    if (accept_punct("-")) {
      return ClassicalExpr::neg(parse_factor());
    }
    if (accept_punct("(")) {
      auto e = parse_cexpr();
      expect_punct(")");
      return e;
    }
    fail("expected a classical expression");
  }

  ClassicalExprPtr parse_term() {
    auto e = parse_factor();
    while (at_punct("*")) {
      advance();
      e = ClassicalExpr::binary(ClassicalExpr::Kind::Mul, e, parse_factor());
    }
    return e;
  }

  ClassicalExprPtr parse_cexpr() {
    auto e = parse_term();
    while (at_punct("+") || at_punct("-")) {
      const bool add = at_punct("+");
      advance();
      e = ClassicalExpr::binary(
          add ? ClassicalExpr::Kind::Add : ClassicalExpr::Kind::Sub, e,
          parse_term());
    }
    return e;
  }

  Comparator parse_comparator() {
    static constexpr std::pair<std::string_view, Comparator> kMap[] = {
        {"==", Comparator::Eq}, {"!=", Comparator::Ne},
        {"<=", Comparator::Le}, {">=", Comparator::Ge},
        {"<", Comparator::Lt},  {">", Comparator::Gt}};
    for (auto [tok, cmp] : kMap) {
      if (at_punct(tok)) {
        advance();
        return cmp;
      }
    }
    fail("expected a comparison operator");
  }

  Cond parse_cond() {
    if (at_ident("measure")) {
      advance();
      expect_punct("(");
      expect_qreg_name();
      expect_punct(",");
      expect_punct("[");
      MeasureCond m;
      do {
        m.qubits.push_back(static_cast<int>(expect_int()));
      } while (accept_punct(","));
      expect_punct("]");
      expect_punct(")");
      if (at_punct("==")) {
        m.in = true;
      } else if (at_punct("!=")) {
        m.in = false;
      } else {
        fail("expected '==' or '!=' after measure(...)");
      }
      advance();
      expect_punct("[");
      const int width = static_cast<int>(m.qubits.size());
      do {
        const Token& tok = peek();
        const std::string s = expect_string();
        try {
          m.outcomes.push_back(parse_outcome_bits(s, width));
        } catch (const ValidationError& e) {
          throw SyntaxError(e.what(), tok.line, tok.column);
        }
      } while (accept_punct(","));
      expect_punct("]");
      return m;
    }
    if (at_ident("check_state_eq")) {
      advance();
      expect_punct("(");
      expect_qreg_name();
      expect_punct(",");
      StateEqCond eq;
      eq.dist = parse_dist(program_.num_qubits());
      expect_punct(",");
      eq.delta = expect_number();
      expect_punct(")");
      return eq;
    }
    if (at_ident("check_state_gt") || at_ident("check_state_lt")) {
      const bool gt = at_ident("check_state_gt");
      advance();
      expect_punct("(");
      expect_qreg_name();
      expect_punct(",");
      std::vector<ProbBound> bounds = parse_bounds(program_.num_qubits());
      expect_punct(",");
      const double delta = expect_number();
      expect_punct(")");
      if (gt) return StateGtCond{std::move(bounds), delta};
      return StateLtCond{std::move(bounds), delta};
    }
    ClassicalCond c;
    c.lhs = parse_cexpr();
    c.cmp = parse_comparator();
    c.rhs = parse_cexpr();
    return c;
  }

  Stmt parse_if() {
    const Token& tok = peek();
    expect_ident("if");
    IfStmt br;
    br.span = SourceSpan{tok.line, tok.column};
    br.cond = parse_cond();
    br.then_block = parse_block();
    if (at_ident("else")) {
      advance();
      if (at_ident("if")) {
        br.else_block.push_back(parse_if());
      } else {
        br.else_block = parse_block();
      }
    }
    return Stmt{std::move(br), SourceSpan{tok.line, tok.column}};
  }

  Stmt parse_stmt() {
    const Token& tok = peek();
    if (at_ident("if")) return parse_if();
    if (at_ident("return")) {
      advance();
      ReturnStmt ret;
      ret.value = parse_cexpr();
      expect_punct(";");
      return Stmt{std::move(ret), SourceSpan{tok.line, tok.column}};
    }
    if (tok.kind == Tok::Ident) {
      const auto kind = gate_from_name(tok.text);
      if (!kind) {
        fail("unknown statement or gate '" + tok.text + "'");
      }
      advance();
      expect_punct("(");
      expect_qreg_name();
      GateOp op;
      op.gate = *kind;
      for (int i = 0; i < gate_num_qubits(*kind); ++i) {
        expect_punct(",");
        op.qubits.push_back(static_cast<int>(expect_int()));
      }
      for (int i = 0; i < gate_num_angles(*kind); ++i) {
        expect_punct(",");
        op.angles.push_back(expect_number());
      }
      expect_punct(")");
      expect_punct(";");
      return Stmt{std::move(op), SourceSpan{tok.line, tok.column}};
    }
    fail("expected a statement");
  }

  Block parse_block() {
    expect_punct("{");
    Block block;
    while (!at_punct("}")) {
      if (peek().kind == Tok::End) fail("unterminated block");
      block.push_back(parse_stmt());
    }
    expect_punct("}");
    return block;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Program program_;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).run(); }

}  // namespace qct
