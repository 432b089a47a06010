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

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "epcalc/labels.hpp"

namespace epcalc {

enum class OpKind { Nil, Prefix, Choice, Parallel, Restrict, Relabel, Signal, Custom };

const char* op_kind_name(OpKind k);

/// An operator instance: the kind together with its parameter (prefix label,
/// restriction set, relabelling, signal, or custom symbol).
struct Operator {
  OpKind kind = OpKind::Nil;
  std::string param;                 // Prefix label, Signal name, Custom symbol
  std::vector<std::string> names;    // Restrict: sorted channel set
  Relabelling mapping;               // Relabel: sorted, identity pairs dropped
  int custom_arity = 0;

  static Operator nil();
  static Operator prefix(Label action);
  static Operator choice();
  static Operator parallel();
  static Operator restrict(std::vector<std::string> names);
  static Operator relabel(Relabelling f);
  static Operator signal(std::string s);
  static Operator custom(std::string symbol, int arity);

  int arity() const;
  /// Operator symbol as in an operator declaration, e.g. "a.", "\{a,b}".
  std::string symbol() const;
  /// Printed parameter: "a", "{a,b}", "a->b,c->d", "s"; empty for
  /// unparametrised operators.
  std::string param_text() const;

  friend bool operator==(const Operator&, const Operator&) = default;
  friend auto operator<=>(const Operator& a, const Operator& b) {
    return a.symbol() <=> b.symbol();
  }
};

struct TermNode;

/// Immutable process expression. Copies are cheap; equality is structural
/// equality up to renaming of recursion-bound variables.
class Term {
public:
  Term() = default;

  static Term var(std::string name);
  static Term op(Operator op, std::vector<Term> args);
  /// rec<X|S>; bindings need not be sorted, duplicate variables are rejected.
  static Term rec(std::string x, std::vector<std::pair<std::string, Term>> spec);

  static Term nil() { return op(Operator::nil(), {}); }
  static Term prefix(Label a, Term p) { return op(Operator::prefix(std::move(a)), {std::move(p)}); }
  static Term choice(Term p, Term q) { return op(Operator::choice(), {std::move(p), std::move(q)}); }
  static Term par(Term p, Term q) { return op(Operator::parallel(), {std::move(p), std::move(q)}); }

  bool is_var() const;
  bool is_op() const;
  bool is_rec() const;
  bool valid() const { return node_ != nullptr; }

  const std::string& var_name() const;          // Var, or the called variable of Rec
  const Operator& oper() const;                 // Op
  const std::vector<Term>& args() const;        // Op
  const std::vector<std::pair<std::string, Term>>& spec() const;  // Rec, sorted by name
  const Term& body(const std::string& x) const;  // Rec: S_x

  /// Free process variables, sorted.
  const std::vector<std::string>& free_vars() const;
  bool is_closed() const { return free_vars().empty(); }

  /// Canonical identity: equal iff alpha-equivalent.
  std::size_t id() const;

  std::string str() const;

  friend bool operator==(const Term& a, const Term& b) { return a.id() == b.id(); }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) { return a.id() < b.id(); }

  const TermNode* node() const { return node_.get(); }

private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
  friend struct TermNode;
  friend Term make_term(std::shared_ptr<TermNode>);
};

struct TermNode {
  enum class Kind { Var, Op, Rec } kind = Kind::Var;
  std::string var;
  Operator op;
  std::vector<Term> args;
  std::vector<std::pair<std::string, Term>> spec;
  std::vector<std::string> free;
  std::size_t id = 0;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.id(); }
};

using Substitution = std::map<std::string, Term>;

std::vector<std::string> free_vars(const Term& p);
bool is_closed(const Term& p);

/// Capture-avoiding substitution of free variables.
Term substitute(const Term& p, const Substitution& sigma);

/// S_X[rec<Y|S>/Y for Y in V_S] for p = rec<X|S>.
Term unfold(const Term& rec_call);

/// All variable names occurring in p, free or bound.
std::set<std::string> all_var_names(const Term& p);

/// Number of free occurrences of each variable.
std::map<std::string, int> free_occurrences(const Term& p);

/// True iff every variable has at most one free occurrence.
bool is_univariate(const Term& p);

/// base + smallest positive index not in `taken`; trailing digits of base are
/// stripped first.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

/// Alpha-canonical rendering; equal for alpha-equivalent terms.
std::string canonical_string(const Term& p);

/// Which operators and labels a parsed term may use.
struct TermSignature {
  bool allow_any = true;
  std::set<OpKind> kinds;
  std::map<std::string, int> custom;  // symbol -> arity
  const LabelUniverse* labels = nullptr;
};

/// Parse a process term in the textual grammar. Throws ParseError.
Term parse_term(const std::string& text, const TermSignature& sig = {});

}  // namespace epcalc
