/*
 * Copyright 2026 The epcalc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lexer.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>

#include "epcalc/error.hpp"

namespace epcalc::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> tokenize(const std::string& src, bool emit_newlines) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  const std::size_t n = src.size();
  auto starts = [&](const char* s) { return src.compare(i, std::strlen(s), s) == 0; };
  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      if (emit_newlines && (out.empty() || out.back().kind != Tok::Newline))
        out.push_back({Tok::Newline, "\n", line});
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      std::string s;
      while (j < n && src[j] != '"' && src[j] != '\n') s += src[j++];
      if (j >= n || src[j] != '"') throw ParseError("unterminated string", line);
      out.push_back({Tok::String, s, line});
      i = j + 1;
      continue;
    }
    if (c == '\'' && i + 1 < n && ident_start(src[i + 1])) {
      std::size_t j = i + 1;
      while (j < n && ident_char(src[j])) ++j;
      out.push_back({Tok::CoName, src.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < n && ident_char(src[j])) ++j;
      std::string word = src.substr(i, j - i);
      if (j < n && (src[j] == '!' || src[j] == '?' || src[j] == ':') &&
          !(j + 1 < n && src[j] == ':' && src[j + 1] == ':')) {
        out.push_back({Tok::BLabel, word + src[j], line});
        i = j + 1;
        continue;
      }
      while (j < n && src[j] == '\'') word += src[j++];
      out.push_back({Tok::Ident, word, line});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, src.substr(i, j - i), line});
      i = j;
      continue;
    }
    static const char* multi[] = {"]->", "]~>", "-[", "~[", "->", "::", "==", "!="};
    bool matched = false;
    for (const char* m : multi) {
      if (starts(m)) {
        out.push_back({Tok::Sym, m, line});
        i += std::strlen(m);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::strchr(".+|\\{}[](),=^*<>!?:;%/", c)) {
      out.push_back({Tok::Sym, std::string(1, c), line});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line);
  }
  out.push_back({Tok::End, "", line});
  return out;
}

const Token& TokenStream::peek(int ahead) const {
  std::size_t p = std::min(pos_ + static_cast<std::size_t>(ahead), toks_.size() - 1);
  return toks_[p];
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::at_sym(const char* s, int ahead) const {
  const Token& t = peek(ahead);
  return t.kind == Tok::Sym && t.text == s;
}

bool TokenStream::at_ident(const char* s) const {
  return peek().kind == Tok::Ident && peek().text == s;
}

void TokenStream::expect_sym(const char* s) {
  if (!at_sym(s)) fail(std::string("expected '") + s + "'");
  next();
}

std::string TokenStream::expect_ident() {
  if (!at(Tok::Ident)) fail("expected identifier");
  return next().text;
}

void TokenStream::skip_newlines() {
  while (at(Tok::Newline)) next();
}

void TokenStream::fail(const std::string& msg) const {
  const Token& t = peek();
  std::string got = t.kind == Tok::End ? "end of input"
                    : t.kind == Tok::Newline ? "end of line"
                                             : "'" + t.text + "'";
  throw ParseError(msg + ", got " + got, t.line);
}

namespace {

Ast parse_sum(TokenStream& ts);

bool at_label(const TokenStream& ts) {
  Tok k = ts.peek().kind;
  return k == Tok::Ident || k == Tok::CoName || k == Tok::BLabel;
}

Ast parse_primary(TokenStream& ts) {
  Ast a;
  a.line = ts.peek().line;
  if (ts.at(Tok::Number)) {
    if (ts.peek().text != "0") ts.fail("only the constant 0 is numeric");
    ts.next();
    a.kind = Ast::Kind::Nil;
    return a;
  }
  if (ts.at_sym("(")) {
    ts.next();
    Ast inner = parse_sum(ts);
    ts.expect_sym(")");
    return inner;
  }
  if (ts.at_ident("rec")) {
    ts.next();
    a.kind = Ast::Kind::Rec;
    a.text = ts.expect_ident();
    ts.expect_sym("{");
    for (;;) {
      std::string x = ts.expect_ident();
      ts.expect_sym("=");
      a.bindings.emplace_back(x, parse_sum(ts));
      if (ts.at_sym(",")) {
        ts.next();
        continue;
      }
      break;
    }
    ts.expect_sym("}");
    return a;
  }
  if (ts.at(Tok::Ident)) {
    a.text = ts.next().text;
    if (ts.at_sym("(")) {
      ts.next();
      a.kind = Ast::Kind::Call;
      if (!ts.at_sym(")")) {
        for (;;) {
          a.kids.push_back(parse_sum(ts));
          if (ts.at_sym(",")) {
            ts.next();
            continue;
          }
          break;
        }
      }
      ts.expect_sym(")");
      return a;
    }
    a.kind = Ast::Kind::Var;
    return a;
  }
  ts.fail("expected a process expression");
}

Ast parse_signal(TokenStream& ts) {
  Ast a = parse_primary(ts);
  while (ts.at_sym("^")) {
    int line = ts.next().line;
    Ast s;
    s.kind = Ast::Kind::Signal;
    s.line = line;
    s.text = ts.expect_ident();
    s.kids.push_back(std::move(a));
    a = std::move(s);
  }
  return a;
}

Ast parse_unary(TokenStream& ts) {
  if (at_label(ts) && ts.at_sym(".", 1) && !ts.at_ident("rec")) {
    Ast a;
    a.kind = Ast::Kind::Prefix;
    a.line = ts.peek().line;
    a.text = ts.next().text;
    ts.next();
    a.kids.push_back(parse_unary(ts));
    return a;
  }
  return parse_signal(ts);
}

Ast parse_post(TokenStream& ts) {
  Ast a = parse_unary(ts);
  for (;;) {
    if (ts.at_sym("\\")) {
      Ast r;
      r.kind = Ast::Kind::Restrict;
      r.line = ts.next().line;
      if (ts.at(Tok::Ident)) {
        r.meta = ts.next().text;
      } else {
        ts.expect_sym("{");
        if (!ts.at_sym("}")) {
          for (;;) {
            r.set.push_back(ts.expect_ident());
            if (ts.at_sym(",")) {
              ts.next();
              continue;
            }
            break;
          }
        }
        ts.expect_sym("}");
      }
      r.kids.push_back(std::move(a));
      a = std::move(r);
    } else if (ts.at_sym("[")) {
      Ast r;
      r.kind = Ast::Kind::Relabel;
      r.line = ts.next().line;
      if (ts.at(Tok::Ident) && ts.at_sym("]", 1)) {
        r.meta = ts.next().text;
      } else if (!ts.at_sym("]")) {
        for (;;) {
          std::string from = ts.expect_ident();
          ts.expect_sym("->");
          std::string to = ts.expect_ident();
          r.mapping.emplace_back(from, to);
          if (ts.at_sym(",")) {
            ts.next();
            continue;
          }
          break;
        }
      }
      ts.expect_sym("]");
      r.kids.push_back(std::move(a));
      a = std::move(r);
    } else {
      return a;
    }
  }
}

Ast parse_par(TokenStream& ts) {
  Ast a = parse_post(ts);
  while (ts.at_sym("|")) {
    Ast p;
    p.kind = Ast::Kind::Par;
    p.line = ts.next().line;
    p.kids.push_back(std::move(a));
    p.kids.push_back(parse_post(ts));
    a = std::move(p);
  }
  return a;
}

Ast parse_sum(TokenStream& ts) {
  Ast a = parse_par(ts);
  while (ts.at_sym("+")) {
    Ast p;
    p.kind = Ast::Kind::Choice;
    p.line = ts.next().line;
    p.kids.push_back(std::move(a));
    p.kids.push_back(parse_par(ts));
    a = std::move(p);
  }
  return a;
}

}  // namespace

Ast parse_ast(TokenStream& ts) { return parse_sum(ts); }

}  // namespace epcalc::detail
