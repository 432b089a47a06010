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

#pragma once

// Shared tokenizer and term AST for process terms and language files.

#include <string>
#include <utility>
#include <vector>

#include "epcalc/labels.hpp"

namespace epcalc::detail {

enum class Tok { Ident, CoName, BLabel, Number, Sym, String, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
};

/// Identifiers: [A-Za-z_][A-Za-z0-9_]* followed by any number of primes.
/// "'a" is a CoName, "b!" "b?" "b:" are BLabels. '#' starts a comment.
std::vector<Token> tokenize(const std::string& src, bool emit_newlines);

struct Ast {
  enum class Kind { Nil, Var, Prefix, Choice, Par, Restrict, Relabel, Signal, Call, Rec };
  Kind kind = Kind::Nil;
  std::string text;                 // Var name, Prefix label, Signal, Call symbol, Rec variable
  std::vector<std::string> set;     // Restrict
  Relabelling mapping;              // Relabel
  std::string meta;                 // Restrict / Relabel written with a parameter identifier
  std::vector<Ast> kids;
  std::vector<std::pair<std::string, Ast>> bindings;
  int line = 0;
};

class TokenStream {
public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(int ahead = 0) const;
  Token next();
  bool at_sym(const char* s, int ahead = 0) const;
  bool at_ident(const char* s) const;
  bool at(Tok k) const { return peek().kind == k; }
  void expect_sym(const char* s);
  std::string expect_ident();
  void skip_newlines();
  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }
  [[noreturn]] void fail(const std::string& msg) const;

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

/// Parse one process expression from the stream (stops at the first token
/// that cannot continue it).
Ast parse_ast(TokenStream& ts);

}  // namespace epcalc::detail
