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

#include "epcalc/transition.hpp"

#include <atomic>
#include <mutex>
#include <unordered_map>

#include "epcalc/error.hpp"

namespace epcalc {

namespace {

std::mutex g_mu;
std::unordered_map<std::string, std::weak_ptr<const TransNode>> g_table;
std::size_t g_next_id = 1;

bool atomic_term(const Term& p) {
  return p.is_var() || (p.is_op() && p.args().empty());
}

bool atomic_trans(const Transition& t) {
  return t.kind() != Transition::Kind::Ctor || t.args().empty();
}

std::string arg_str(const Transition::Arg& a) {
  if (const Term* p = std::get_if<Term>(&a)) return atomic_term(*p) ? p->str() : "(" + p->str() + ")";
  const Transition& t = std::get<Transition>(a);
  return atomic_trans(t) ? t.str() : "(" + t.str() + ")";
}

std::string spec_str(const Term& call) {
  std::string s = "{";
  bool first = true;
  for (const auto& [x, b] : call.spec()) {
    s += (first ? "" : ", ") + x + " = " + b.str();
    first = false;
  }
  return s + "}";
}

std::string render(const TransNode& n) {
  switch (n.kind) {
    case Transition::Kind::Var:
      return "(" + n.var + " :: " + n.source.str() + " -" + n.label + "-> " + n.target.str() + ")";
    case Transition::Kind::RecAct:
    case Transition::Kind::RecIn:
      return std::string(n.kind == Transition::Kind::RecAct ? kRecAct : kRecIn) + "(" +
             n.call.var_name() + "," + spec_str(n.call) + "," + n.sub.str() + ")";
    case Transition::Kind::Ctor: break;
  }
  const std::string name = n.rule->name.str();
  const auto& a = n.args;
  if (a.empty()) return name;
  if (a.size() == 2) return arg_str(a[0]) + " " + name + " " + arg_str(a[1]);
  if (a.size() == 1) {
    if (std::holds_alternative<Term>(a[0])) return name + " " + arg_str(a[0]);
    return arg_str(a[0]) + " " + name;
  }
  std::string s = name + "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ", ";
    s += std::holds_alternative<Term>(a[i]) ? std::get<Term>(a[i]).str()
                                            : std::get<Transition>(a[i]).str();
  }
  return s + ")";
}

std::string key_of(const TransNode& n) {
  switch (n.kind) {
    case Transition::Kind::Var:
      return "V" + n.var + "|" + std::to_string(n.source.id()) + "|" + n.label + "|" +
             std::to_string(n.target.id());
    case Transition::Kind::RecAct:
    case Transition::Kind::RecIn:
      return std::string(n.kind == Transition::Kind::RecAct ? "A" : "I") +
             std::to_string(n.call.id()) + "," + std::to_string(n.sub.id());
    case Transition::Kind::Ctor: break;
  }
  std::string k = "C" + std::to_string(reinterpret_cast<std::uintptr_t>(n.rule)) + "(";
  for (const auto& a : n.args) {
    if (const Term* p = std::get_if<Term>(&a)) k += "p" + std::to_string(p->id()) + ",";
    else k += "t" + std::to_string(std::get<Transition>(a).id()) + ",";
  }
  return k + ")";
}

}  // namespace

Transition intern_transition(std::shared_ptr<TransNode> n) {
  std::string key = key_of(*n);
  std::lock_guard<std::mutex> lock(g_mu);
  auto it = g_table.find(key);
  if (it != g_table.end()) {
    if (auto live = it->second.lock()) {
      Transition t;
      t.node_ = std::move(live);
      return t;
    }
  }
  n->id = g_next_id++;
  n->name = render(*n);
  Transition t;
  t.node_ = n;
  g_table[key] = n;
  if (g_table.size() > 4096 && g_table.size() % 4096 == 0) {
    for (auto e = g_table.begin(); e != g_table.end();)
      e = e->second.expired() ? g_table.erase(e) : std::next(e);
  }
  return t;
}

Transition Transition::var(std::string name, Term source, Label label, Term target) {
  auto n = std::make_shared<TransNode>();
  n->kind = Kind::Var;
  n->var = std::move(name);
  n->source = std::move(source);
  n->label = std::move(label);
  n->target = std::move(target);
  n->closed = false;
  return intern_transition(std::move(n));
}

Transition Transition::ctor(const Rule& rule, std::vector<Arg> args) {
  if (static_cast<int>(args.size()) != rule.arity())
    throw Error("rule " + rule.name.str() + " expects " + std::to_string(rule.arity()) +
                " arguments");
  auto n = std::make_shared<TransNode>();
  n->kind = Kind::Ctor;
  n->rule = &rule;
  std::vector<Term> srcs;
  Substitution sigma;
  for (int i = 0; i < rule.arity(); ++i) {
    const auto& a = args[static_cast<std::size_t>(i)];
    const std::string& xi = rule.x[static_cast<std::size_t>(i)];
    if (rule.triggered(i)) {
      const Transition* t = std::get_if<Transition>(&a);
      if (!t || !t->valid())
        throw Error("rule " + rule.name.str() + " needs a transition at position " +
                    std::to_string(i + 1));
      if (t->label() != *rule.trigger[static_cast<std::size_t>(i)])
        throw Error("rule " + rule.name.str() + " needs label " +
                    *rule.trigger[static_cast<std::size_t>(i)] + " at position " +
                    std::to_string(i + 1) + ", got " + t->label());
      srcs.push_back(t->source());
      sigma[*rule.y[static_cast<std::size_t>(i)]] = t->target();
      if (!t->is_closed()) n->closed = false;
    } else {
      const Term* p = std::get_if<Term>(&a);
      if (!p || !p->valid())
        throw Error("rule " + rule.name.str() + " needs a process at position " +
                    std::to_string(i + 1));
      srcs.push_back(*p);
      sigma[xi] = *p;
      if (!p->is_closed()) n->closed = false;
    }
  }
  n->source = Term::op(rule.op, srcs);
  n->label = rule.label;
  n->target = substitute(rule.target, sigma);
  n->args = std::move(args);
  return intern_transition(std::move(n));
}

Transition Transition::rec(Kind kind, Term call, Transition sub) {
  if (kind != Kind::RecAct && kind != Kind::RecIn) throw Error("not a recursion constructor");
  if (!call.is_rec()) throw Error("recursion constructor over a non-recursive term");
  if (sub.source() != unfold(call))
    throw Error("source of " + sub.str() + " is not the unfolding of " + call.str());
  auto n = std::make_shared<TransNode>();
  n->kind = kind;
  n->source = call;
  n->label = sub.label();
  n->target = kind == Kind::RecAct ? sub.target() : call;
  n->closed = call.is_closed() && sub.is_closed();
  n->call = std::move(call);
  n->sub = std::move(sub);
  return intern_transition(std::move(n));
}

Transition::Kind Transition::kind() const { return node_->kind; }
const Term& Transition::source() const { return node_->source; }
const Label& Transition::label() const { return node_->label; }
const Term& Transition::target() const { return node_->target; }
const Rule* Transition::rule() const { return node_->rule; }
const std::vector<Transition::Arg>& Transition::args() const { return node_->args; }
const Term& Transition::call() const { return node_->call; }
const Transition& Transition::sub() const { return node_->sub; }
const std::string& Transition::var_name() const { return node_->var; }
const std::string& Transition::str() const { return node_->name; }
std::size_t Transition::id() const { return node_ ? node_->id : 0; }
bool Transition::is_closed() const { return node_->closed; }

std::vector<Transition> Transition::children() const {
  std::vector<Transition> out;
  switch (kind()) {
    case Kind::Var: break;
    case Kind::RecAct:
    case Kind::RecIn: out.push_back(sub()); break;
    case Kind::Ctor:
      for (const auto& a : args())
        if (const Transition* t = std::get_if<Transition>(&a)) out.push_back(*t);
      break;
  }
  return out;
}

ProofNode proof_tree(const Transition& t) {
  ProofNode n;
  n.source = t.source();
  n.label = t.label();
  n.target = t.target();
  switch (t.kind()) {
    case Transition::Kind::Var: n.rule = t.var_name(); break;
    case Transition::Kind::RecAct: n.rule = kRecAct; break;
    case Transition::Kind::RecIn: n.rule = kRecIn; break;
    case Transition::Kind::Ctor: n.rule = t.rule()->name.str(); break;
  }
  for (const auto& c : t.children()) n.children.push_back(proof_tree(c));
  return n;
}

Transition from_proof(const Tss& tss, const ProofNode& p) {
  std::vector<Transition> kids;
  for (const auto& c : p.children) kids.push_back(from_proof(tss, c));
  Transition out;
  if (p.rule == kRecAct || p.rule == kRecIn) {
    if (kids.size() != 1) throw Error("recursion node needs one premise");
    out = Transition::rec(p.rule == kRecAct ? Transition::Kind::RecAct : Transition::Kind::RecIn,
                          p.source, kids[0]);
  } else {
    if (!p.source.is_op()) throw Error("rule " + p.rule + " applied to a non-operator source");
    const Operator& op = p.source.oper();
    for (const Rule& r : tss.rules_for(op)) {
      if (r.name.str() != p.rule || static_cast<int>(r.trigger_set().size()) !=
                                        static_cast<int>(kids.size()))
        continue;
      std::vector<Transition::Arg> args;
      std::size_t k = 0;
      bool ok = true;
      for (int i = 0; i < r.arity(); ++i) {
        if (r.triggered(i)) {
          if (kids[k].label() != *r.trigger[static_cast<std::size_t>(i)] ||
              kids[k].source() != p.source.args()[static_cast<std::size_t>(i)])
            ok = false;
          args.emplace_back(kids[k++]);
        } else {
          args.emplace_back(p.source.args()[static_cast<std::size_t>(i)]);
        }
      }
      if (!ok) continue;
      out = Transition::ctor(r, std::move(args));
      break;
    }
    if (!out.valid()) throw Error("no rule " + p.rule + " fits the proof node");
  }
  if (out.source() != p.source || out.label() != p.label || out.target() != p.target)
    throw Error("proof node literal does not follow from rule " + p.rule);
  return out;
}

std::vector<Transition> leaves(const Transition& e) {
  std::vector<Transition> out;
  if (e.kind() == Transition::Kind::Var) {
    out.push_back(e);
    return out;
  }
  for (const auto& c : e.children()) {
    auto sub = leaves(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

namespace {

std::optional<std::string> mismatch(const TSubst& s, const Transition& leaf) {
  auto it = s.trans.find(leaf.var_name());
  if (it == s.trans.end()) return std::nullopt;
  const Transition& v = it->second;
  if (v.label() != leaf.label())
    return leaf.var_name() + " bound to a " + v.label() + "-transition, leaf needs " + leaf.label();
  Term src = substitute(leaf.source(), s.procs);
  if (v.source() != src)
    return leaf.var_name() + " bound to a transition from " + v.source().str() +
           ", leaf needs source " + src.str();
  Term tgt = substitute(leaf.target(), s.procs);
  if (v.target() != tgt)
    return leaf.var_name() + " bound to a transition to " + v.target().str() +
           ", leaf needs target " + tgt.str();
  return std::nullopt;
}

Transition apply_rec(const Transition& e, const TSubst& s) {
  switch (e.kind()) {
    case Transition::Kind::Var: {
      if (auto m = mismatch(s, e)) throw TsubstError("substitution does not match: " + *m);
      auto it = s.trans.find(e.var_name());
      if (it != s.trans.end()) return it->second;
      return Transition::var(e.var_name(), substitute(e.source(), s.procs), e.label(),
                             substitute(e.target(), s.procs));
    }
    case Transition::Kind::RecAct:
    case Transition::Kind::RecIn:
      return Transition::rec(e.kind(), substitute(e.call(), s.procs), apply_rec(e.sub(), s));
    case Transition::Kind::Ctor: break;
  }
  std::vector<Transition::Arg> args;
  for (const auto& a : e.args()) {
    if (const Term* p = std::get_if<Term>(&a)) args.emplace_back(substitute(*p, s.procs));
    else args.emplace_back(apply_rec(std::get<Transition>(a), s));
  }
  return Transition::ctor(*e.rule(), std::move(args));
}

}  // namespace

bool matches(const TSubst& s, const Transition& e) {
  for (const auto& leaf : leaves(e))
    if (mismatch(s, leaf)) return false;
  return true;
}

Transition apply_tsubst(const Transition& e, const TSubst& s) {
  if (s.procs.empty() && s.trans.empty()) return e;
  Transition out;
  try {
    out = apply_rec(e, s);
  } catch (const TsubstError&) {
    throw;
  } catch (const Error& err) {
    throw TsubstError(std::string("substitution result is not a transition: ") + err.what());
  }
  std::map<std::string, Transition> seen;
  for (const auto& leaf : leaves(out)) {
    auto [it, fresh] = seen.emplace(leaf.var_name(), leaf);
    if (!fresh && it->second != leaf)
      throw TsubstError("result is not an open transition: variable " + leaf.var_name() +
                        " carries two different literals");
  }
  return out;
}

}  // namespace epcalc
