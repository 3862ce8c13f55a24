// Copyright 2026 The Spectral Authors.
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

#include "spectral/speclang.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace spectral {

SpecExpr SpecExpr::make_word(std::string name) {
  SpecExpr e;
  e.kind = Kind::Word;
  e.word = std::move(name);
  return e;
}

SpecExpr SpecExpr::make_const(mpz_class v) {
  SpecExpr e;
  e.kind = Kind::Const;
  e.value = std::move(v);
  return e;
}

SpecExpr SpecExpr::make_add(std::vector<SpecExpr> ops) {
  SpecExpr e;
  e.kind = Kind::Add;
  e.operands = std::move(ops);
  return e;
}

SpecExpr SpecExpr::make_mul(std::vector<SpecExpr> ops) {
  SpecExpr e;
  e.kind = Kind::Mul;
  e.operands = std::move(ops);
  return e;
}

std::vector<std::string> SpecExpr::words() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto walk = [&](auto&& self, const SpecExpr& e) -> void {
    if (e.kind == Kind::Word) {
      if (seen.insert(e.word).second) out.push_back(e.word);
    }
    for (const auto& op : e.operands) self(self, op);
  };
  walk(walk, *this);
  return out;
}

std::string SpecExpr::to_string() const {
  switch (kind) {
    case Kind::Word: return word;
    case Kind::Const: return value.get_str();
    case Kind::Add:
    case Kind::Mul: {
      std::string sep = kind == Kind::Add ? " + " : "*";
      std::string s;
      for (size_t i = 0; i < operands.size(); ++i) {
        const SpecExpr& op = operands[i];
        bool paren = kind == Kind::Mul && op.kind == Kind::Add;
        if (i) s += sep;
        if (paren) s += "(";
        s += op.to_string();
        if (paren) s += ")";
      }
      return s;
    }
  }
  return "?";
}

namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, End } kind = Kind::End;
  std::string text;
  unsigned line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  bool accept_punct(const std::string& p) {
    if (tok_.kind == Token::Kind::Punct && tok_.text == p) {
      advance();
      return true;
    }
    return false;
  }
  void expect_punct(const std::string& p) {
    if (!accept_punct(p))
      throw ParseError("expected '" + p + "', got '" + tok_.text + "'", tok_.line, tok_.col);
  }

private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Kind::Ident;
      tok_.text = text_.substr(start, pos_ - start);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_.kind = Token::Kind::Int;
      tok_.text = text_.substr(start, pos_ - start);
    } else if (c == '.' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '.') {
      pos_ += 2;
      tok_.kind = Token::Kind::Punct;
      tok_.text = "..";
    } else if (std::string("=+*();").find(c) != std::string::npos) {
      ++pos_;
      tok_.kind = Token::Kind::Punct;
      tok_.text = std::string(1, c);
    } else {
      throw ParseError(std::string("unsupported operator or character '") + c + "'", line_, col_);
    }
    col_ += static_cast<unsigned>(tok_.text.size());
  }

  const std::string& text_;
  size_t pos_ = 0;
  unsigned line_ = 1, col_ = 1;
  Token tok_;
};

// Splits a name into (prefix, numeric suffix); returns false if no digits.
bool split_indexed(const std::string& s, std::string& prefix, unsigned& index) {
  size_t i = s.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
  if (i == s.size()) return false;
  prefix = s.substr(0, i);
  index = static_cast<unsigned>(std::stoul(s.substr(i)));
  return true;
}

SpecExpr parse_expr(Lexer& lx);

SpecExpr parse_factor(Lexer& lx) {
  const Token& t = lx.peek();
  if (t.kind == Token::Kind::Ident) return SpecExpr::make_word(lx.take().text);
  if (t.kind == Token::Kind::Int) return SpecExpr::make_const(mpz_class(lx.take().text));
  if (lx.accept_punct("(")) {
    SpecExpr e = parse_expr(lx);
    lx.expect_punct(")");
    return e;
  }
  throw ParseError("expected word, constant or '('; got '" + t.text + "'", t.line, t.col);
}

SpecExpr parse_term(Lexer& lx) {
  std::vector<SpecExpr> ops{parse_factor(lx)};
  while (lx.accept_punct("*")) ops.push_back(parse_factor(lx));
  return ops.size() == 1 ? ops[0] : SpecExpr::make_mul(std::move(ops));
}

SpecExpr parse_expr(Lexer& lx) {
  std::vector<SpecExpr> ops{parse_term(lx)};
  while (lx.accept_punct("+")) ops.push_back(parse_term(lx));
  return ops.size() == 1 ? ops[0] : SpecExpr::make_add(std::move(ops));
}

}  // namespace

SpecFile parse_spec(const std::string& text) {
  Lexer lx(text);
  SpecFile f;
  std::set<std::string> decl_names;
  std::set<std::string> used_bits;

  while (lx.peek().kind == Token::Kind::Ident && lx.peek().text == "word") {
    lx.take();
    Token name = lx.take();
    if (name.kind != Token::Kind::Ident)
      throw ParseError("expected word name", name.line, name.col);
    lx.expect_punct("=");
    WordBinding wb;
    wb.name = name.text;
    // either a range a0..a3 or an explicit bit list
    Token first = lx.take();
    if (first.kind != Token::Kind::Ident)
      throw ParseError("expected bit name", first.line, first.col);
    if (lx.accept_punct("..")) {
      Token last = lx.take();
      std::string p0, p1;
      unsigned i0, i1;
      if (last.kind != Token::Kind::Ident || !split_indexed(first.text, p0, i0) ||
          !split_indexed(last.text, p1, i1) || p0 != p1 || i1 < i0)
        throw ParseError("bad bit range", first.line, first.col);
      for (unsigned i = i0; i <= i1; ++i) wb.bits.push_back(p0 + std::to_string(i));
    } else {
      wb.bits.push_back(first.text);
      while (lx.peek().kind == Token::Kind::Ident && lx.peek().text != "unsigned")
        wb.bits.push_back(lx.take().text);
    }
    Token enc = lx.take();
    if (enc.kind != Token::Kind::Ident || enc.text != "unsigned")
      throw ParseError("expected 'unsigned'", enc.line, enc.col);
    lx.expect_punct(";");
    if (!decl_names.insert(wb.name).second)
      throw ParseError("word '" + wb.name + "' declared twice", name.line, name.col);
    for (const std::string& b : wb.bits)
      if (!used_bits.insert(b).second)
        throw ParseError("bit '" + b + "' appears in two words", name.line, name.col);
    f.decls.push_back(std::move(wb));
  }

  Token lhs = lx.take();
  if (lhs.kind != Token::Kind::Ident)
    throw ParseError("expected output word on the left-hand side", lhs.line, lhs.col);
  f.output_word = lhs.text;
  lx.expect_punct("=");
  f.expr = parse_expr(lx);
  lx.accept_punct(";");
  const Token& end = lx.peek();
  if (end.kind != Token::Kind::End)
    throw ParseError("trailing input '" + end.text + "'", end.line, end.col);
  return f;
}

mpz_class evaluate_spec(const SpecExpr& e, const std::map<std::string, mpz_class>& words) {
  switch (e.kind) {
    case SpecExpr::Kind::Const: return e.value;
    case SpecExpr::Kind::Word: {
      auto it = words.find(e.word);
      if (it == words.end()) throw Error("unknown word '" + e.word + "'");
      return it->second;
    }
    case SpecExpr::Kind::Add: {
      mpz_class v = 0;
      for (const auto& op : e.operands) v += evaluate_spec(op, words);
      return v;
    }
    case SpecExpr::Kind::Mul: {
      mpz_class v = 1;
      for (const auto& op : e.operands) v *= evaluate_spec(op, words);
      return v;
    }
  }
  return 0;
}

Polynomial expand_spec(const SpecExpr& e, const std::map<std::string, std::vector<VarId>>& bits,
                       size_t max_terms) {
  switch (e.kind) {
    case SpecExpr::Kind::Const: return Polynomial::constant(e.value);
    case SpecExpr::Kind::Word: {
      auto it = bits.find(e.word);
      if (it == bits.end()) throw Error("unknown word '" + e.word + "'");
      Polynomial p;
      mpz_class w = 1;
      for (VarId v : it->second) {
        p.add_term(Monomial(v), w);
        w <<= 1;
      }
      return p;
    }
    case SpecExpr::Kind::Add: {
      Polynomial p;
      for (const auto& op : e.operands) p = add(p, expand_spec(op, bits, max_terms), max_terms);
      return p;
    }
    case SpecExpr::Kind::Mul: {
      Polynomial p = Polynomial::constant(1);
      for (const auto& op : e.operands) p = mul(p, expand_spec(op, bits, max_terms), max_terms);
      return p;
    }
  }
  return {};
}

}  // namespace spectral
