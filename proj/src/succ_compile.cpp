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

#include <algorithm>

#include "epcalc/successor.hpp"
#include "langspec.hpp"

namespace epcalc {

namespace {

std::string binding_str(const detail::Env& env) {
  std::string s;
  for (const auto& [k, v] : env) {
    if (!s.empty()) s += ",";
    s += k + "=" + v.label;
  }
  return s;
}

VarRef ref(VarClass c, int i) {
  VarRef v;
  v.cls = c;
  v.index = i;
  v.raw = v.canonical();
  return v;
}

TExpr proc_var(VarClass c, int i) { return TExpr::process(Term::var(ref(c, i).canonical())); }

TExpr exact_ctor(const RuleName& name, std::vector<TExpr> args) {
  TExpr e = TExpr::ctor(name.family, std::move(args));
  e.exact = name;
  return e;
}

}  // namespace

std::vector<SuccRule> compile_succ_rules(const Tss& tss) {
  std::vector<SuccRule> out;
  for (const auto& st : tss.spec().succ) {
    for (const auto& env : detail::expand_fors(st.fors, {}, tss.labels())) {
      SuccRule r;
      r.id = st.id;
      r.binding = binding_str(env);
      r.line = st.line;
      r.chi = st.chi;
      r.zeta = st.zeta;
      r.result = st.result;
      r.premises = st.premises;
      for (const auto& c : st.conds) {
        LabelCond lc;
        lc.subject = c.subject;
        switch (c.op) {
          case detail::Cond::Op::Eq:
          case detail::Cond::Op::Ne:
            if (auto l = detail::eval_label(c.value, env)) lc.allowed.insert(*l);
            lc.negate = c.op == detail::Cond::Op::Ne;
            break;
          case detail::Cond::Op::In:
          case detail::Cond::Op::NotIn: {
            auto set = detail::eval_set(c.set, env, tss.labels());
            lc.allowed.insert(set.begin(), set.end());
            lc.negate = c.op == detail::Cond::Op::NotIn;
            break;
          }
        }
        r.conds.push_back(std::move(lc));
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<MetaRule> compile_meta_rules(const Tss& tss) {
  std::vector<MetaRule> out;
  for (const auto& mt : tss.spec().meta) {
    MetaRule m;
    m.id = mt.id;
    m.kinds = mt.kinds;
    m.rec = mt.rec;
    m.line = mt.line;
    auto set = detail::eval_set(mt.zeta_set, {}, tss.labels());
    m.zeta_labels.insert(set.begin(), set.end());
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<SuccRule> expand_meta(const Tss& tss, const MetaRule& m, const Operator& op) {
  std::vector<SuccRule> out;
  if (!m.kinds.count(op.kind)) return out;
  std::vector<const Rule*> by_name;   // first rule of every name
  std::set<std::string> indicator;
  for (const Rule& r : tss.rules_for(op)) {
    if (by_name.empty() || by_name.back()->name != r.name) by_name.push_back(&r);
    if (m.zeta_labels.count(r.label)) indicator.insert(r.name.str());
  }
  for (const Rule* r : by_name) {
    for (const Rule* s : by_name) {
      if (!indicator.count(s->name.str())) continue;
      SuccRule sr;
      sr.id = m.id;
      sr.binding = r->name.str() + "," + s->name.str();
      sr.line = m.line;
      std::vector<TExpr> xe, ye, ze;
      for (int i = 0; i < r->arity(); ++i) {
        bool in_r = r->triggered(i), in_s = s->triggered(i);
        xe.push_back(in_r ? TExpr::variable(ref(VarClass::TX, i)) : proc_var(VarClass::X, i));
        ye.push_back(in_s ? TExpr::variable(ref(VarClass::TY, i)) : proc_var(VarClass::X, i));
        if (in_r && in_s) {
          SuccPremise p;
          p.lhs = TExpr::variable(ref(VarClass::TX, i));
          p.sub = TExpr::variable(ref(VarClass::TY, i));
          p.rhs = TExpr::variable(ref(VarClass::TZ, i));
          sr.premises.push_back(std::move(p));
          ze.push_back(TExpr::variable(ref(VarClass::TZ, i)));
        } else if (!in_s) {
          ze.push_back(xe.back());
        } else {
          ze.push_back(proc_var(VarClass::YPrime, i));
        }
      }
      sr.chi = exact_ctor(r->name, std::move(xe));
      sr.zeta = exact_ctor(s->name, std::move(ye));
      sr.result = exact_ctor(r->name, std::move(ze));
      LabelCond lc;
      lc.subject = "zeta";
      lc.allowed = m.zeta_labels;
      sr.conds.push_back(std::move(lc));
      out.push_back(std::move(sr));
    }
  }
  return out;
}

Rule1Expansion expand_rule1(const Tss& tss) {
  Rule1Expansion ex;
  const Alphabets& al = tss.alphabets();
  for (const MetaRule& m : compile_meta_rules(tss)) {
    std::vector<Operator> ops;
    for (OpKind k : m.kinds) {
      switch (k) {
        case OpKind::Nil: ops.push_back(Operator::nil()); break;
        case OpKind::Prefix:
          if (!al.channels.empty()) ops.push_back(Operator::prefix(*al.channels.begin()));
          else if (!tss.labels().actions().empty())
            ops.push_back(Operator::prefix(tss.labels().actions().front()));
          break;
        case OpKind::Choice: ops.push_back(Operator::choice()); break;
        case OpKind::Parallel: ops.push_back(Operator::parallel()); break;
        case OpKind::Restrict: ops.push_back(Operator::restrict({})); break;
        case OpKind::Relabel: ops.push_back(Operator::relabel({})); break;
        case OpKind::Signal:
          if (!al.signals.empty()) ops.push_back(Operator::signal(*al.signals.begin()));
          break;
        case OpKind::Custom:
          for (const auto& [sym, n] : tss.spec().custom) ops.push_back(Operator::custom(sym, n));
          break;
      }
    }
    for (const auto& op : ops) {
      auto rs = expand_meta(tss, m, op);
      ex.count_by_type[op.symbol()] += static_cast<int>(rs.size());
      ex.total += static_cast<int>(rs.size());
      ex.rules.insert(ex.rules.end(), rs.begin(), rs.end());
    }
    if (m.rec) {
      bool has_act = false, has_in = false, z_act = false, z_in = false;
      for (const auto& l : tss.labels().all()) {
        bool ind = tss.labels().is_indicator(l);
        (ind ? has_in : has_act) = true;
        if (m.zeta_labels.count(l)) (ind ? z_in : z_act) = true;
      }
      int n = (int(has_act) + int(has_in)) * (int(z_act) + int(z_in));
      ex.count_by_type["rec"] += n;
      ex.total += n;
    }
  }
  return ex;
}

}  // namespace epcalc
