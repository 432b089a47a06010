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

#include "epcalc/successor.hpp"

#include <algorithm>

#include "epcalc/error.hpp"

namespace epcalc {

namespace {

struct Bind {
  std::map<std::string, Transition> tr;
  std::map<std::string, Term> pr;

  bool put(const std::string& k, const Term& p) {
    auto [it, fresh] = pr.emplace(k, p);
    return fresh || it->second == p;
  }
  bool put(const std::string& k, const Transition& t) {
    auto [it, fresh] = tr.emplace(k, t);
    return fresh || it->second == t;
  }
};

std::string idx(int i) { return std::to_string(i + 1); }

bool bind_var(const VarRef& v, const Transition& t, Bind& b) {
  if (!b.put(v.canonical(), t)) return false;
  switch (v.cls) {
    case VarClass::TX: return b.put("x" + idx(v.index), t.source()) &&
                              b.put("x" + idx(v.index) + "'", t.target());
    case VarClass::TY: return b.put("x" + idx(v.index), t.source()) &&
                              b.put("y" + idx(v.index) + "'", t.target());
    case VarClass::TZ: return b.put("z" + idx(v.index) + "'", t.target());
    default: return false;
  }
}

/// Bind the arguments of chi or zeta against a concrete transition.
bool bind_side(const TExpr& e, const Transition& t, Bind& b) {
  if (e.kind != TExpr::Kind::Ctor || t.kind() != Transition::Kind::Ctor) return false;
  const RuleName& name = t.rule()->name;
  if (e.exact ? *e.exact != name : e.family != name.family) return false;
  if (e.args.size() != t.args().size()) return false;
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    const TExpr& a = e.args[i];
    const auto& arg = t.args()[i];
    if (a.kind == TExpr::Kind::Var) {
      const Transition* sub = std::get_if<Transition>(&arg);
      if (!sub || !bind_var(a.var, *sub, b)) return false;
    } else if (a.kind == TExpr::Kind::Proc) {
      const Term* p = std::get_if<Term>(&arg);
      if (!p) return false;
      if (a.proc.is_var()) {
        if (!b.put(a.proc.var_name(), *p)) return false;
      } else if (a.proc != *p) {
        return false;
      }
    } else {
      return false;
    }
  }
  return true;
}

bool cond_holds(const LabelCond& c, const Label& l) {
  return c.allowed.count(l) != c.negate;
}

bool conds_hold(const SuccRule& r, const std::string& subject, const Label& l) {
  for (const auto& c : r.conds)
    if (c.subject == subject && !cond_holds(c, l)) return false;
  return true;
}

void collect_tz(const TExpr& e, std::vector<VarRef>& out) {
  if (e.kind == TExpr::Kind::Var && e.var.cls == VarClass::TZ) {
    if (std::find(out.begin(), out.end(), e.var) == out.end()) out.push_back(e.var);
  }
  for (const auto& a : e.args) collect_tz(a, out);
}

void instantiate(const Tss& tss, const TExpr& e, const Term& expected, const Bind& b,
                 std::vector<Transition::Arg>& out) {
  switch (e.kind) {
    case TExpr::Kind::Var: {
      auto it = b.tr.find(e.var.canonical());
      if (it != b.tr.end() && it->second.source() == expected) out.emplace_back(it->second);
      return;
    }
    case TExpr::Kind::Proc: {
      for (const auto& v : e.proc.free_vars())
        if (!b.pr.count(v)) return;
      Term p = substitute(e.proc, b.pr);
      if (p == expected) out.emplace_back(p);
      return;
    }
    case TExpr::Kind::Ctor: break;
  }
  if (!expected.is_op() || expected.args().size() != e.args.size()) return;
  const Operator& op = expected.oper();
  std::vector<std::vector<Transition::Arg>> choices(e.args.size());
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    instantiate(tss, e.args[i], expected.args()[i], b, choices[i]);
    if (choices[i].empty()) return;
  }
  std::vector<std::size_t> pick(choices.size(), 0);
  for (;;) {
    std::vector<Transition::Arg> args;
    std::vector<std::optional<Label>> labels;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      args.push_back(choices[i][pick[i]]);
      if (const Transition* t = std::get_if<Transition>(&args.back())) labels.emplace_back(t->label());
      else labels.emplace_back(std::nullopt);
    }
    std::vector<const Rule*> rules;
    if (e.exact) {
      if (const Rule* r = tss.find_rule(*e.exact, op, labels)) rules.push_back(r);
    } else {
      rules = tss.find_by_family(e.family, op, labels);
    }
    for (const Rule* r : rules) {
      Transition t = Transition::ctor(*r, args);
      if (t.source() == expected) out.emplace_back(t);
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
}

std::string family_of(const TExpr& e) { return e.exact ? e.exact->family : e.family; }

}  // namespace

SuccessorEngine::SuccessorEngine(std::shared_ptr<const Tss> tss, DeriveOptions opts)
    : SuccessorEngine(std::make_shared<const Deriver>(std::move(tss), opts)) {}

SuccessorEngine::SuccessorEngine(std::shared_ptr<const Deriver> deriver)
    : deriver_(std::move(deriver)) {
  rules_ = compile_succ_rules(tss());
  meta_ = compile_meta_rules(tss());
  for (const auto& r : rules_)
    if (r.chi.kind == TExpr::Kind::Ctor && r.zeta.kind == TExpr::Kind::Ctor)
      index_[{family_of(r.chi), family_of(r.zeta)}].push_back(&r);
}

const std::vector<SuccRule>& SuccessorEngine::meta_rules_for(const Operator& op) const {
  std::string key = op.symbol();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = meta_cache_.find(key);
    if (it != meta_cache_.end()) return *it->second;
  }
  auto rs = std::make_unique<std::vector<SuccRule>>();
  for (const auto& m : meta_) {
    auto more = expand_meta(tss(), m, op);
    rs->insert(rs->end(), more.begin(), more.end());
  }
  std::lock_guard<std::mutex> lock(mu_);
  return *meta_cache_.emplace(key, std::move(rs)).first->second;
}

void SuccessorEngine::apply(const SuccRule& r, const Transition& t, const Transition& u,
                            std::vector<Transition>& out) const {
  Bind b;
  if (!bind_side(r.chi, t, b) || !bind_side(r.zeta, u, b)) return;
  if (!conds_hold(r, "chi", t.label()) || !conds_hold(r, "zeta", u.label())) return;
  for (const auto& [name, tr] : b.tr)
    if (!conds_hold(r, name, tr.label())) return;

  // Candidate values of every tz variable: premise results, or transitions
  // enabled at the variable's source for the free ones.
  std::vector<VarRef> tz;
  std::vector<std::vector<Transition>> choices;
  for (const auto& p : r.premises) {
    if (p.lhs.kind != TExpr::Kind::Var || p.sub.kind != TExpr::Kind::Var ||
        p.rhs.kind != TExpr::Kind::Var)
      return;
    auto lt = b.tr.find(p.lhs.var.canonical());
    auto st = b.tr.find(p.sub.var.canonical());
    if (lt == b.tr.end() || st == b.tr.end()) return;
    std::vector<Transition> vs;
    for (const auto& v : successors(lt->second, st->second))
      if (conds_hold(r, p.rhs.var.canonical(), v.label())) vs.push_back(v);
    if (vs.empty()) return;
    tz.push_back(p.rhs.var);
    choices.push_back(std::move(vs));
  }
  std::vector<VarRef> free;
  collect_tz(r.result, free);
  for (const auto& v : free) {
    if (std::find(tz.begin(), tz.end(), v) != tz.end()) continue;
    auto src = b.pr.find("y" + idx(v.index) + "'");
    if (src == b.pr.end()) src = b.pr.find("x" + idx(v.index));
    if (src == b.pr.end()) return;
    std::vector<Transition> vs;
    for (const auto& e : deriver_->enabled(src->second))
      if (conds_hold(r, v.canonical(), e.label())) vs.push_back(e);
    if (vs.empty()) return;
    tz.push_back(v);
    choices.push_back(std::move(vs));
  }

  std::vector<std::size_t> pick(choices.size(), 0);
  for (;;) {
    Bind bb = b;
    bool ok = true;
    for (std::size_t i = 0; i < tz.size() && ok; ++i) ok = bind_var(tz[i], choices[i][pick[i]], bb);
    if (ok) {
      std::vector<Transition::Arg> res;
      instantiate(tss(), r.result, u.target(), bb, res);
      for (const auto& a : res)
        if (const Transition* v = std::get_if<Transition>(&a)) out.push_back(*v);
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
}

const std::vector<Transition>& SuccessorEngine::successors(const Transition& t,
                                                           const Transition& u) const {
  if (t.source() != u.source())
    throw SourceMismatch("successor of " + t.str() + " under " + u.str() +
                         ": the transitions have different sources");
  Key key{t.id(), u.id()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  std::vector<Transition> out;
  using K = Transition::Kind;
  bool t_rec = t.kind() == K::RecAct || t.kind() == K::RecIn;
  bool u_rec = u.kind() == K::RecAct || u.kind() == K::RecIn;
  if (t_rec && u_rec) {
    for (const auto& v : successors(t.sub(), u.sub())) {
      if (u.kind() == K::RecAct) {
        out.push_back(v);
      } else {
        auto kind = tss().labels().is_indicator(v.label()) ? K::RecIn : K::RecAct;
        out.push_back(Transition::rec(kind, t.call(), v));
      }
    }
  } else if (t.kind() == K::Ctor && u.kind() == K::Ctor) {
    auto it = index_.find({t.rule()->name.family, u.rule()->name.family});
    if (it != index_.end())
      for (const SuccRule* r : it->second) apply(*r, t, u, out);
    for (const auto& r : meta_rules_for(t.rule()->op)) apply(r, t, u, out);
  }
  std::sort(out.begin(), out.end(),
            [](const Transition& a, const Transition& b) { return a.str() < b.str(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(key, std::move(out)).first->second;
}

SuccRelation successor_relation(const SuccessorEngine& e, const std::vector<Term>& roots) {
  SuccRelation rel;
  rel.lts = explore(e.deriver(), roots);
  for (std::size_t s = 0; s < rel.lts.states.size(); ++s)
    for (const auto& t : rel.lts.out[s])
      for (const auto& u : rel.lts.out[s])
        for (const auto& v : e.successors(t, u)) rel.triples.push_back({s, t, u, v});
  return rel;
}

SuccRelation successor_relation(const SuccessorEngine& e, const Term& p) {
  return successor_relation(e, std::vector<Term>{p});
}

}  // namespace epcalc
