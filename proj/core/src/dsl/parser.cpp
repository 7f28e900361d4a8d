// Copyright 2026 The DHEvo Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dhevo/dsl/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <vector>

namespace dhevo::dsl {

SourceError::SourceError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message)
    : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  Number,
  Ident,
  LParen,
  RParen,
  Comma,
  Colon,
  Plus,
  Minus,
  Star,
  Slash,
  Lt,
  Le,
  Gt,
  Ge,
  EqEq,
  End,
};

struct Token {
  Tok type;
  std::string_view text;
  double number = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& t) {
  if (t.type == Tok::End) return "end of input";
  return "'" + std::string(t.text) + "'";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::End, {}, 0.0, line, col};
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      t.type = Tok::Number;
      t.text = src.substr(i, j - i);
      const std::string buf(t.text);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), v);
      if (ec != std::errc() || ptr != buf.data() + buf.size() || !std::isfinite(v)) {
        throw SourceError(ErrorCode::ParseError, line, col, "invalid numeric literal '" + buf + "'");
      }
      t.number = v;
      out.push_back(t);
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.type = Tok::Ident;
      t.text = src.substr(i, j - i);
      out.push_back(t);
      advance(j - i);
      continue;
    }
    std::size_t len = 1;
    switch (c) {
      case '(': t.type = Tok::LParen; break;
      case ')': t.type = Tok::RParen; break;
      case ',': t.type = Tok::Comma; break;
      case ':': t.type = Tok::Colon; break;
      case '+': t.type = Tok::Plus; break;
      case '-': t.type = Tok::Minus; break;
      case '*': t.type = Tok::Star; break;
      case '/': t.type = Tok::Slash; break;
      case '<':
        t.type = Tok::Lt;
        if (i + 1 < src.size() && src[i + 1] == '=') t.type = Tok::Le, len = 2;
        break;
      case '>':
        t.type = Tok::Gt;
        if (i + 1 < src.size() && src[i + 1] == '=') t.type = Tok::Ge, len = 2;
        break;
      case '=':
        if (i + 1 < src.size() && src[i + 1] == '=') {
          t.type = Tok::EqEq;
          len = 2;
          break;
        }
        [[fallthrough]];
      default:
        throw SourceError(ErrorCode::ParseError, line, col, std::string("unexpected character '") + c + "'");
    }
    t.text = src.substr(i, len);
    out.push_back(t);
    advance(len);
  }
  out.push_back(Token{Tok::End, {}, 0.0, line, col});
  return out;
}

// Generous nesting guard for the recursive descent itself; the real depth
// cap is enforced on the finished tree.
constexpr std::size_t kMaxNesting = 256;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    expect_keyword("score");
    expect(Tok::Colon, "':' after 'score'");
    const Token score_tok = peek();
    Node score = expr();
    require_kind(score, Kind::Number, score_tok, "score expression must be numeric");
    expect_keyword("roundup");
    expect(Tok::Colon, "':' after 'roundup'");
    const Token round_tok = peek();
    Node roundup = expr();
    require_kind(roundup, Kind::Boolean, round_tok, "roundup expression must be boolean");
    if (peek().type != Tok::End) error(ErrorCode::ParseError, peek(), "unexpected " + describe(peek()));
    Program p{std::move(score), std::move(roundup)};
    if (depth(p) > kMaxDepth) {
      error(ErrorCode::LimitExceeded, toks_.front(), "AST depth " + std::to_string(depth(p)) + " exceeds " + std::to_string(kMaxDepth));
    }
    if (node_count(p) > kMaxNodes) {
      error(ErrorCode::LimitExceeded, toks_.front(),
            "AST has " + std::to_string(node_count(p)) + " nodes, limit " + std::to_string(kMaxNodes));
    }
    return p;
  }

 private:
  struct Guard {
    explicit Guard(Parser& p) : parser(p) {
      if (++parser.nesting_ > kMaxNesting) parser.error(ErrorCode::LimitExceeded, parser.peek(), "expression nested too deeply");
    }
    ~Guard() { --parser.nesting_; }
    Parser& parser;
  };

  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_keyword(std::string_view kw) const { return peek().type == Tok::Ident && peek().text == kw; }

  [[noreturn]] void error(ErrorCode code, const Token& at, const std::string& msg) const {
    throw SourceError(code, at.line, at.column, msg);
  }

  void expect(Tok type, const std::string& what) {
    if (peek().type != type) error(ErrorCode::ParseError, peek(), "expected " + what + ", found " + describe(peek()));
    take();
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) error(ErrorCode::ParseError, peek(), "expected '" + std::string(kw) + "', found " + describe(peek()));
    take();
  }

  void require_kind(const Node& n, Kind k, const Token& at, const std::string& msg) const {
    if (n.kind() != k) error(ErrorCode::TypeError, at, msg);
  }

  Node expr() {
    Guard g(*this);
    Token start = peek();
    Node lhs = conj();
    while (at_keyword("or")) {
      take();
      require_kind(lhs, Kind::Boolean, start, "'or' needs boolean operands");
      start = peek();
      Node rhs = conj();
      require_kind(rhs, Kind::Boolean, start, "'or' needs boolean operands");
      lhs = Node::binary(Op::Or, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Node conj() {
    Token start = peek();
    Node lhs = negation();
    while (at_keyword("and")) {
      take();
      require_kind(lhs, Kind::Boolean, start, "'and' needs boolean operands");
      start = peek();
      Node rhs = negation();
      require_kind(rhs, Kind::Boolean, start, "'and' needs boolean operands");
      lhs = Node::binary(Op::And, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Node negation() {
    Guard g(*this);
    if (at_keyword("not")) {
      take();
      const Token start = peek();
      Node inner = negation();
      require_kind(inner, Kind::Boolean, start, "'not' needs a boolean operand");
      return Node::unary(Op::Not, std::move(inner));
    }
    return comparison();
  }

  Node comparison() {
    const Token start = peek();
    Node lhs = sum();
    std::optional<Op> op;
    switch (peek().type) {
      case Tok::Lt: op = Op::Lt; break;
      case Tok::Le: op = Op::Le; break;
      case Tok::Gt: op = Op::Gt; break;
      case Tok::Ge: op = Op::Ge; break;
      case Tok::EqEq: op = Op::Eq; break;
      default: return lhs;
    }
    const Token op_tok = take();
    require_kind(lhs, Kind::Number, start, "comparison '" + std::string(op_tok.text) + "' needs numeric operands");
    const Token rstart = peek();
    Node rhs = sum();
    require_kind(rhs, Kind::Number, rstart, "comparison '" + std::string(op_tok.text) + "' needs numeric operands");
    return Node::binary(*op, std::move(lhs), std::move(rhs));
  }

  Node sum() {
    Token start = peek();
    Node lhs = term();
    while (peek().type == Tok::Plus || peek().type == Tok::Minus) {
      const Op op = take().type == Tok::Plus ? Op::Add : Op::Sub;
      require_kind(lhs, Kind::Number, start, "arithmetic on a boolean value");
      start = peek();
      Node rhs = term();
      require_kind(rhs, Kind::Number, start, "arithmetic on a boolean value");
      lhs = Node::binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Node term() {
    Token start = peek();
    Node lhs = unary();
    while (peek().type == Tok::Star || peek().type == Tok::Slash) {
      const Op op = take().type == Tok::Star ? Op::Mul : Op::Div;
      require_kind(lhs, Kind::Number, start, "arithmetic on a boolean value");
      start = peek();
      Node rhs = unary();
      require_kind(rhs, Kind::Number, start, "arithmetic on a boolean value");
      lhs = Node::binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Node unary() {
    Guard g(*this);
    if (peek().type == Tok::Minus) {
      take();
      if (peek().type == Tok::Number) return Node::constant(-take().number);
      const Token start = peek();
      Node inner = unary();
      require_kind(inner, Kind::Number, start, "unary '-' on a boolean value");
      return Node::unary(Op::Neg, std::move(inner));
    }
    return atom();
  }

  Node call_arg(Kind k, const char* fn) {
    const Token start = peek();
    Node n = expr();
    if (n.kind() != k) {
      error(ErrorCode::TypeError, start,
            std::string("argument of '") + fn + "' must be " + (k == Kind::Number ? "numeric" : "boolean"));
    }
    return n;
  }

  Node atom() {
    const Token t = peek();
    switch (t.type) {
      case Tok::Number:
        take();
        return Node::constant(t.number);
      case Tok::LParen: {
        take();
        Node inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        break;
      default:
        error(ErrorCode::ParseError, t, "unexpected " + describe(t));
    }
    take();
    if (t.text == "true") return Node::boolean(true);
    if (t.text == "false") return Node::boolean(false);
    if (auto f = feature_from_name(t.text)) return Node::feature_ref(*f);
    if (t.text == "min" || t.text == "max") {
      expect(Tok::LParen, "'(' after '" + std::string(t.text) + "'");
      Node a = call_arg(Kind::Number, t.text == "min" ? "min" : "max");
      expect(Tok::Comma, "','");
      Node b = call_arg(Kind::Number, t.text == "min" ? "min" : "max");
      expect(Tok::RParen, "')'");
      return Node::binary(t.text == "min" ? Op::Min : Op::Max, std::move(a), std::move(b));
    }
    if (t.text == "abs") {
      expect(Tok::LParen, "'(' after 'abs'");
      Node a = call_arg(Kind::Number, "abs");
      expect(Tok::RParen, "')'");
      return Node::unary(Op::Abs, std::move(a));
    }
    if (t.text == "if") {
      expect(Tok::LParen, "'(' after 'if'");
      Node c = call_arg(Kind::Boolean, "if");
      expect(Tok::Comma, "','");
      Node a = call_arg(Kind::Number, "if");
      expect(Tok::Comma, "','");
      Node b = call_arg(Kind::Number, "if");
      expect(Tok::RParen, "')'");
      return Node::conditional(std::move(c), std::move(a), std::move(b));
    }
    error(ErrorCode::UnknownIdentifier, t, "unknown identifier '" + std::string(t.text) + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t nesting_ = 0;
};

}  // namespace

Program parse(std::string_view text) { return Parser(lex(text)).program(); }

}  // namespace dhevo::dsl
