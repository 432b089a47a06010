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

#include "epcalc/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <unordered_map>

#include "epcalc/error.hpp"
#include "lexer.hpp"

namespace epcalc {

const char* op_kind_name(OpKind k) {
  switch (k) {
    case OpKind::Nil: return "nil";
    case OpKind::Prefix: return "prefix";
    case OpKind::Choice: return "choice";
    case OpKind::Parallel: return "parallel";
    case OpKind::Restrict: return "restrict";
    case OpKind::Relabel: return "relabel";
    case OpKind::Signal: return "signal";
    case OpKind::Custom: return "custom";
  }
  return "?";
}

Operator Operator::nil() { return {}; }

Operator Operator::prefix(Label action) {
  Operator o;
  o.kind = OpKind::Prefix;
  o.param = std::move(action);
  return o;
}

Operator Operator::choice() {
  Operator o;
  o.kind = OpKind::Choice;
  return o;
}

Operator Operator::parallel() {
  Operator o;
  o.kind = OpKind::Parallel;
  return o;
}

Operator Operator::restrict(std::vector<std::string> names) {
  Operator o;
  o.kind = OpKind::Restrict;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  o.names = std::move(names);
  return o;
}

Operator Operator::relabel(Relabelling f) {
  Operator o;
  o.kind = OpKind::Relabel;
  std::erase_if(f, [](const auto& p) { return p.first == p.second; });
  std::sort(f.begin(), f.end());
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i].first == f[i - 1].first)
      throw Error("relabelling maps '" + f[i].first + "' twice");
  o.mapping = std::move(f);
  return o;
}

Operator Operator::signal(std::string s) {
  Operator o;
  o.kind = OpKind::Signal;
  o.param = std::move(s);
  return o;
}

Operator Operator::custom(std::string symbol, int arity) {
  Operator o;
  o.kind = OpKind::Custom;
  o.param = std::move(symbol);
  o.custom_arity = arity;
  return o;
}

int Operator::arity() const {
  switch (kind) {
    case OpKind::Nil: return 0;
    case OpKind::Prefix:
    case OpKind::Restrict:
    case OpKind::Relabel:
    case OpKind::Signal: return 1;
    case OpKind::Choice:
    case OpKind::Parallel: return 2;
    case OpKind::Custom: return custom_arity;
  }
  return 0;
}

std::string Operator::param_text() const {
  switch (kind) {
    case OpKind::Prefix:
    case OpKind::Signal:
    case OpKind::Custom: return param;
    case OpKind::Restrict: {
      std::string s = "{";
      for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
      return s + "}";
    }
    case OpKind::Relabel: {
      std::string s;
      for (std::size_t i = 0; i < mapping.size(); ++i)
        s += (i ? "," : "") + mapping[i].first + "->" + mapping[i].second;
      return s;
    }
    default: return {};
  }
}

std::string Operator::symbol() const {
  switch (kind) {
    case OpKind::Nil: return "0";
    case OpKind::Prefix: return param + ".";
    case OpKind::Choice: return "+";
    case OpKind::Parallel: return "|";
    case OpKind::Restrict: return "\\" + param_text();
    case OpKind::Relabel: return "[" + param_text() + "]";
    case OpKind::Signal: return "^" + param;
    case OpKind::Custom: return param + "/" + std::to_string(custom_arity);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Interning of alpha-canonical keys.

namespace {

std::mutex g_intern_mutex;
std::unordered_map<std::string, std::size_t>& intern_table() {
  static std::unordered_map<std::string, std::size_t> table;
  return table;
}

std::size_t intern_key(const std::string& key) {
  std::lock_guard<std::mutex> lock(g_intern_mutex);
  auto& table = intern_table();
  auto it = table.find(key);
  if (it != table.end()) return it->second;
  std::size_t id = table.size() + 1;
  table.emplace(key, id);
  return id;
}

using Scope = const std::vector<std::pair<std::string, Term>>*;

bool mentions_scope(const Term& t, const std::vector<Scope>& env) {
  for (const auto& v : t.free_vars())
    for (Scope s : env)
      for (const auto& b : *s)
        if (b.first == v) return true;
  return false;
}

void serialize(const Term& t, std::vector<Scope>& env, std::string& out, bool abbreviate = true) {
  if (abbreviate && !mentions_scope(t, env)) {
    out += '#';
    out += std::to_string(t.id());
    return;
  }
  const TermNode* n = t.node();
  switch (n->kind) {
    case TermNode::Kind::Var:
      for (std::size_t k = env.size(); k-- > 0;) {
        const auto& sc = *env[k];
        for (std::size_t j = 0; j < sc.size(); ++j) {
          if (sc[j].first == n->var) {
            out += '@' + std::to_string(env.size() - 1 - k) + '.' + std::to_string(j);
            return;
          }
        }
      }
      out += "v" + n->var;
      return;
    case TermNode::Kind::Op:
      out += "o" + n->op.symbol() + "(";
      for (const auto& a : n->args) {
        serialize(a, env, out, abbreviate);
        out += ',';
      }
      out += ')';
      return;
    case TermNode::Kind::Rec: {
      std::size_t idx = 0;
      while (n->spec[idx].first != n->var) ++idx;
      out += "r" + std::to_string(idx) + "{";
      env.push_back(&n->spec);
      for (const auto& b : n->spec) {
        serialize(b.second, env, out, abbreviate);
        out += ',';
      }
      env.pop_back();
      out += '}';
      return;
    }
  }
}

std::vector<std::string> merge_sorted(std::vector<std::string> a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Term make_term(std::shared_ptr<TermNode> n) {
  std::string key;
  switch (n->kind) {
    case TermNode::Kind::Var:
      n->free = {n->var};
      key = "v" + n->var;
      break;
    case TermNode::Kind::Op: {
      key = "o" + n->op.symbol() + "(";
      for (const auto& a : n->args) {
        n->free = merge_sorted(std::move(n->free), a.free_vars());
        key += std::to_string(a.id()) + ",";
      }
      key += ")";
      break;
    }
    case TermNode::Kind::Rec: {
      std::vector<std::string> fv;
      for (const auto& b : n->spec) fv = merge_sorted(std::move(fv), b.second.free_vars());
      std::erase_if(fv, [&](const std::string& v) {
        return std::any_of(n->spec.begin(), n->spec.end(),
                           [&](const auto& b) { return b.first == v; });
      });
      n->free = std::move(fv);
      std::vector<Scope> env{&n->spec};
      std::size_t idx = 0;
      while (n->spec[idx].first != n->var) ++idx;
      key = "r" + std::to_string(idx) + "{";
      for (const auto& b : n->spec) {
        serialize(b.second, env, key);
        key += ',';
      }
      key += '}';
      break;
    }
  }
  n->id = intern_key(key);
  return Term(std::shared_ptr<const TermNode>(std::move(n)));
}

Term Term::var(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Var;
  n->var = std::move(name);
  return make_term(std::move(n));
}

Term Term::op(Operator op, std::vector<Term> args) {
  if (static_cast<int>(args.size()) != op.arity())
    throw Error("operator " + op.symbol() + " expects " + std::to_string(op.arity()) +
                " arguments, got " + std::to_string(args.size()));
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Op;
  n->op = std::move(op);
  n->args = std::move(args);
  return make_term(std::move(n));
}

Term Term::rec(std::string x, std::vector<std::pair<std::string, Term>> spec) {
  if (spec.empty()) throw Error("recursive specification must not be empty");
  std::sort(spec.begin(), spec.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < spec.size(); ++i)
    if (spec[i].first == spec[i - 1].first)
      throw Error("variable '" + spec[i].first + "' bound twice in recursive specification");
  if (std::none_of(spec.begin(), spec.end(), [&](const auto& b) { return b.first == x; }))
    throw Error("recursive call variable '" + x + "' not in the specification's domain");
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Rec;
  n->var = std::move(x);
  n->spec = std::move(spec);
  return make_term(std::move(n));
}

bool Term::is_var() const { return node_->kind == TermNode::Kind::Var; }
bool Term::is_op() const { return node_->kind == TermNode::Kind::Op; }
bool Term::is_rec() const { return node_->kind == TermNode::Kind::Rec; }
const std::string& Term::var_name() const { return node_->var; }
const Operator& Term::oper() const { return node_->op; }
const std::vector<Term>& Term::args() const { return node_->args; }
const std::vector<std::pair<std::string, Term>>& Term::spec() const { return node_->spec; }
const std::vector<std::string>& Term::free_vars() const { return node_->free; }
std::size_t Term::id() const { return node_ ? node_->id : 0; }

const Term& Term::body(const std::string& x) const {
  for (const auto& b : node_->spec)
    if (b.first == x) return b.second;
  throw UnknownName("variable '" + x + "' not bound by this specification");
}

// ---------------------------------------------------------------------------
// Printing.

namespace {

enum Level { kSum = 1, kPar = 2, kPost = 3, kPrefix = 4, kSignal = 5, kAtom = 6 };

Level level_of(const Term& t) {
  if (!t.is_op()) return kAtom;
  switch (t.oper().kind) {
    case OpKind::Choice: return kSum;
    case OpKind::Parallel: return kPar;
    case OpKind::Restrict:
    case OpKind::Relabel: return kPost;
    case OpKind::Prefix: return kPrefix;
    case OpKind::Signal: return kSignal;
    default: return kAtom;
  }
}

void print(const Term& t, int min_level, std::string& out);

void print_spec(const Term& t, std::string& out) {
  out += "rec " + t.var_name() + " { ";
  bool first = true;
  for (const auto& [x, body] : t.spec()) {
    if (!first) out += ", ";
    first = false;
    out += x + " = ";
    print(body, kSum, out);
  }
  out += " }";
}

void print(const Term& t, int min_level, std::string& out) {
  bool parens = level_of(t) < min_level;
  if (parens) out += '(';
  if (t.is_var()) {
    out += t.var_name();
  } else if (t.is_rec()) {
    print_spec(t, out);
  } else {
    const Operator& op = t.oper();
    const auto& a = t.args();
    switch (op.kind) {
      case OpKind::Nil: out += '0'; break;
      case OpKind::Prefix:
        out += op.param + ".";
        print(a[0], kPrefix, out);
        break;
      case OpKind::Choice:
        print(a[0], kSum, out);
        out += " + ";
        print(a[1], kPar, out);
        break;
      case OpKind::Parallel:
        print(a[0], kPar, out);
        out += " | ";
        print(a[1], kPost, out);
        break;
      case OpKind::Restrict:
        print(a[0], kPost, out);
        out += " \\ " + op.param_text();
        break;
      case OpKind::Relabel:
        print(a[0], kPost, out);
        out += "[" + op.param_text() + "]";
        break;
      case OpKind::Signal:
        print(a[0], kSignal, out);
        out += " ^ " + op.param;
        break;
      case OpKind::Custom:
        out += op.param + "(";
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (i) out += ", ";
          print(a[i], kSum, out);
        }
        out += ")";
        break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string Term::str() const {
  std::string out;
  print(*this, kSum, out);
  return out;
}

std::string canonical_string(const Term& p) {
  std::vector<Scope> env;
  std::string out;
  serialize(p, env, out, false);
  return out;
}

// ---------------------------------------------------------------------------
// Variables and substitution.

std::vector<std::string> free_vars(const Term& p) { return p.free_vars(); }
bool is_closed(const Term& p) { return p.is_closed(); }

namespace {

void collect_names(const Term& p, std::set<std::string>& out) {
  if (p.is_var()) {
    out.insert(p.var_name());
  } else if (p.is_op()) {
    for (const auto& a : p.args()) collect_names(a, out);
  } else {
    for (const auto& [x, b] : p.spec()) {
      out.insert(x);
      collect_names(b, out);
    }
  }
}

void count_free(const Term& p, const std::set<std::string>& bound,
                std::map<std::string, int>& out) {
  if (p.is_var()) {
    if (!bound.count(p.var_name())) ++out[p.var_name()];
  } else if (p.is_op()) {
    for (const auto& a : p.args()) count_free(a, bound, out);
  } else {
    std::set<std::string> inner = bound;
    for (const auto& b : p.spec()) inner.insert(b.first);
    for (const auto& b : p.spec()) count_free(b.second, inner, out);
  }
}

}  // namespace

std::set<std::string> all_var_names(const Term& p) {
  std::set<std::string> out;
  collect_names(p, out);
  return out;
}

std::map<std::string, int> free_occurrences(const Term& p) {
  std::map<std::string, int> out;
  count_free(p, {}, out);
  return out;
}

bool is_univariate(const Term& p) {
  for (const auto& [v, n] : free_occurrences(p))
    if (n > 1) return false;
  return true;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "X";
  for (int i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

Term substitute(const Term& p, const Substitution& sigma) {
  if (sigma.empty()) return p;
  // Only the part of sigma touching free variables of p matters.
  Substitution relevant;
  for (const auto& v : p.free_vars()) {
    auto it = sigma.find(v);
    if (it != sigma.end()) relevant.insert(*it);
  }
  if (relevant.empty()) return p;

  if (p.is_var()) return relevant.begin()->second;
  if (p.is_op()) {
    std::vector<Term> args;
    args.reserve(p.args().size());
    for (const auto& a : p.args()) args.push_back(substitute(a, relevant));
    return Term::op(p.oper(), std::move(args));
  }

  // Recursive call: bound names of the specification are not in `relevant`
  // (they are not free in p). Rename binders that would capture.
  std::set<std::string> captured_free;
  for (const auto& [x, v] : relevant)
    for (const auto& f : v.free_vars()) captured_free.insert(f);
  std::set<std::string> taken = all_var_names(p);
  for (const auto& [x, v] : relevant) {
    taken.insert(x);
    auto names = all_var_names(v);
    taken.insert(names.begin(), names.end());
  }
  Substitution rename;
  std::map<std::string, std::string> new_name;
  for (const auto& [x, b] : p.spec()) {
    if (captured_free.count(x)) {
      std::string y = fresh_name(x, taken);
      taken.insert(y);
      new_name[x] = y;
      rename.emplace(x, Term::var(y));
    }
  }
  std::vector<std::pair<std::string, Term>> spec;
  for (const auto& [x, b] : p.spec()) {
    Term body = rename.empty() ? b : substitute(b, rename);
    std::string name = new_name.count(x) ? new_name[x] : x;
    spec.emplace_back(name, substitute(body, relevant));
  }
  std::string call = new_name.count(p.var_name()) ? new_name[p.var_name()] : p.var_name();
  return Term::rec(call, std::move(spec));
}

Term unfold(const Term& rec_call) {
  if (!rec_call.is_rec()) throw Error("unfold expects a recursive call");
  Substitution s;
  for (const auto& [y, b] : rec_call.spec()) s.emplace(y, Term::rec(y, rec_call.spec()));
  return substitute(rec_call.body(rec_call.var_name()), s);
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

using detail::Ast;

Term to_term(const Ast& a, const TermSignature& sig) {
  auto allow = [&](OpKind k) {
    if (!sig.allow_any && !sig.kinds.count(k))
      throw ParseError(std::string("operator kind '") + op_kind_name(k) +
                           "' is not part of this language",
                       a.line);
  };
  auto kids = [&]() {
    std::vector<Term> out;
    for (const auto& k : a.kids) out.push_back(to_term(k, sig));
    return out;
  };
  switch (a.kind) {
    case Ast::Kind::Nil:
      allow(OpKind::Nil);
      return Term::nil();
    case Ast::Kind::Var:
      if (!sig.allow_any && sig.custom.count(a.text) && sig.custom.at(a.text) == 0)
        return Term::op(Operator::custom(a.text, 0), {});
      return Term::var(a.text);
    case Ast::Kind::Prefix:
      allow(OpKind::Prefix);
      if (sig.labels && !sig.labels->is_action(a.text))
        throw ParseError("'" + a.text + "' is not an action of this language", a.line);
      return Term::op(Operator::prefix(a.text), kids());
    case Ast::Kind::Choice:
      allow(OpKind::Choice);
      return Term::op(Operator::choice(), kids());
    case Ast::Kind::Par:
      allow(OpKind::Parallel);
      return Term::op(Operator::parallel(), kids());
    case Ast::Kind::Restrict:
      allow(OpKind::Restrict);
      if (!a.meta.empty()) throw ParseError("restriction set must be written in braces", a.line);
      if (sig.labels)
        for (const auto& c : a.set)
          if (!sig.labels->alphabets().channels.count(c))
            throw ParseError("'" + c + "' is not a channel name", a.line);
      return Term::op(Operator::restrict(a.set), kids());
    case Ast::Kind::Relabel: {
      allow(OpKind::Relabel);
      if (!a.meta.empty()) throw ParseError("relabelling must be written as [a->b, ...]", a.line);
      if (sig.labels) {
        const Alphabets& al = sig.labels->alphabets();
        for (const auto& [from, to] : a.mapping) {
          bool ok = (al.channels.count(from) && al.channels.count(to)) ||
                    (al.broadcasts.count(from) && al.broadcasts.count(to)) ||
                    (al.signals.count(from) && al.signals.count(to));
          if (!ok)
            throw ParseError("relabelling " + from + "->" + to +
                                 " must map within one alphabet",
                             a.line);
        }
      }
      try {
        return Term::op(Operator::relabel(a.mapping), kids());
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), a.line);
      }
    }
    case Ast::Kind::Signal:
      allow(OpKind::Signal);
      if (sig.labels && !sig.labels->alphabets().signals.count(a.text))
        throw ParseError("'" + a.text + "' is not a signal", a.line);
      return Term::op(Operator::signal(a.text), kids());
    case Ast::Kind::Call: {
      int n = static_cast<int>(a.kids.size());
      if (!sig.allow_any) {
        auto it = sig.custom.find(a.text);
        if (it == sig.custom.end())
          throw ParseError("unknown operator '" + a.text + "'", a.line);
        if (it->second != n)
          throw ParseError("operator '" + a.text + "' has arity " + std::to_string(it->second),
                           a.line);
      }
      return Term::op(Operator::custom(a.text, n), kids());
    }
    case Ast::Kind::Rec: {
      std::vector<std::pair<std::string, Term>> spec;
      for (const auto& [x, b] : a.bindings) spec.emplace_back(x, to_term(b, sig));
      try {
        return Term::rec(a.text, std::move(spec));
      } catch (const Error& e) {
        throw ParseError(e.what(), a.line);
      }
    }
  }
  throw ParseError("bad term", a.line);
}

}  // namespace

Term parse_term(const std::string& text, const TermSignature& sig) {
  detail::TokenStream ts(detail::tokenize(text, false));
  Ast a = detail::parse_ast(ts);
  if (!ts.at(detail::Tok::End)) ts.fail("unexpected trailing input");
  return to_term(a, sig);
}

}  // namespace epcalc
