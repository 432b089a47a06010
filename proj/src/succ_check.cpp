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
#include <set>
#include <tuple>

#include "epcalc/successor.hpp"

namespace epcalc {

namespace {

class Checker {
public:
  explicit Checker(const Tss& tss) : tss_(tss), ops_(tss.representative_ops()) {}

  void check(const SuccRule& r, bool user);
  void check_meta(const MetaRule& m);
  std::vector<Diagnostic> take() { return std::move(out_); }

private:
  const Tss& tss_;
  std::vector<Operator> ops_;
  std::set<std::tuple<std::string, std::string, std::string>> seen_;
  std::vector<Diagnostic> out_;
  const SuccRule* cur_ = nullptr;

  void add(const std::string& code, const std::string& clause, const std::string& detail = "") {
    if (!seen_.insert({code, cur_->name(), detail}).second) return;
    out_.push_back({code, cur_->name(), clause, detail, cur_->line});
  }

  static std::string fam(const TExpr& e) { return e.exact ? e.exact->family : e.family; }

  bool has_rules(const TExpr& e) const;
  bool unknown_vars(const SuccRule& r);
  bool bad_families(const TExpr& e, bool user);
  std::optional<std::string> incoherent(const TExpr& e, const Term& expected,
                                        const std::vector<int>& is) const;
  bool ops_of(const FamilyInfo& f, const Operator& op) const {
    return op.kind == f.kind && (f.kind != OpKind::Custom || op.param == f.custom);
  }
};

bool contains(const std::vector<int>& v, int i) {
  return std::find(v.begin(), v.end(), i) != v.end();
}

std::string pos(int i) { return "position " + std::to_string(i + 1); }

Term pvar(const std::string& base, int i, bool prime) {
  return Term::var(base + std::to_string(i + 1) + (prime ? "'" : ""));
}

bool Checker::has_rules(const TExpr& e) const {
  const FamilyInfo* f = tss_.family(fam(e));
  if (!f) return false;
  if (!e.exact) return true;
  for (const auto& op : ops_) {
    if (!ops_of(*f, op)) continue;
    for (const auto& r : tss_.rules_for(op))
      if (r.name == *e.exact) return true;
  }
  return false;
}

void vars_of(const TExpr& e, std::vector<VarRef>& out) {
  switch (e.kind) {
    case TExpr::Kind::Var: out.push_back(e.var); break;
    case TExpr::Kind::Proc:
      for (const auto& [name, n] : free_occurrences(e.proc))
        for (int k = 0; k < n; ++k) out.push_back(parse_var_ref(name));
      break;
    case TExpr::Kind::Ctor:
      for (const auto& a : e.args) vars_of(a, out);
      break;
  }
}

bool Checker::unknown_vars(const SuccRule& r) {
  std::vector<VarRef> vs;
  vars_of(r.chi, vs);
  vars_of(r.zeta, vs);
  vars_of(r.result, vs);
  for (const auto& p : r.premises) {
    vars_of(p.lhs, vs);
    vars_of(p.sub, vs);
    vars_of(p.rhs, vs);
  }
  bool bad = false;
  for (const auto& v : vs)
    if (v.cls == VarClass::Unknown) {
      add("S14", "unknown variable", v.raw);
      bad = true;
    }
  for (const auto& c : r.conds) {
    if (c.subject == "chi" || c.subject == "zeta") continue;
    if (!parse_var_ref(c.subject).is_transition()) {
      add("S14", "label condition on an unknown transition variable", c.subject);
      bad = true;
    }
  }
  return bad;
}

bool Checker::bad_families(const TExpr& e, bool user) {
  bool bad = false;
  if (e.kind == TExpr::Kind::Ctor) {
    std::string f = fam(e);
    if (user && (f == kRecAct || f == kRecIn)) {
      add("S15", "recursion constructors are reserved for the built-in schema", f);
      bad = true;
    } else if (!has_rules(e)) {
      add("S01", "unknown transition constructor", e.exact ? e.exact->str() : f);
      bad = true;
    } else if (static_cast<int>(e.args.size()) != tss_.family(f)->arity) {
      add("S03", "constructor applied to the wrong number of arguments", e.str());
      bad = true;
    }
  }
  for (const auto& a : e.args) bad = bad_families(a, user) || bad;
  return bad;
}

std::optional<std::string> Checker::incoherent(const TExpr& e, const Term& expected,
                                               const std::vector<int>& is) const {
  auto fail = [&]() {
    return std::optional<std::string>(e.str() + " cannot have source " + expected.str());
  };
  switch (e.kind) {
    case TExpr::Kind::Var: {
      const int i = e.var.index;
      Term src = e.var.cls == VarClass::TZ && contains(is, i) ? pvar("y", i, true) : pvar("x", i, false);
      if (expected != src) return fail();
      return std::nullopt;
    }
    case TExpr::Kind::Proc:
      if (expected != e.proc) return fail();
      return std::nullopt;
    case TExpr::Kind::Ctor: break;
  }
  const FamilyInfo* f = tss_.family(fam(e));
  if (!f || !expected.is_op() || !ops_of(*f, expected.oper()) ||
      static_cast<int>(expected.args().size()) != f->arity)
    return fail();
  for (std::size_t j = 0; j < e.args.size(); ++j) {
    bool trig = contains(f->trigger_set, static_cast<int>(j));
    bool is_tr = e.args[j].kind != TExpr::Kind::Proc;
    if (trig != is_tr) return fail();
    if (auto m = incoherent(e.args[j], expected.args()[j], is)) return m;
  }
  return std::nullopt;
}

void Checker::check(const SuccRule& r, bool user) {
  cur_ = &r;
  if (unknown_vars(r)) return;
  if (r.chi.kind != TExpr::Kind::Ctor || r.zeta.kind != TExpr::Kind::Ctor) {
    add("S04", "conclusion must have the form r(xe) ~[s(ye)]~> v");
    return;
  }
  bool bad = bad_families(r.chi, user);
  bad = bad_families(r.zeta, user) || bad;
  bad = bad_families(r.result, user) || bad;
  for (const auto& p : r.premises) {
    bad = bad_families(p.lhs, user) || bad;
    bad = bad_families(p.sub, user) || bad;
    bad = bad_families(p.rhs, user) || bad;
  }
  if (bad) return;
  const FamilyInfo& fr = *tss_.family(fam(r.chi));
  const FamilyInfo& fs = *tss_.family(fam(r.zeta));
  if (fr.kind != fs.kind || fr.custom != fs.custom || fr.arity != fs.arity) {
    add("S02", "chi and zeta are named by rules of different types",
        fam(r.chi) + " vs " + fam(r.zeta));
    return;
  }
  const int n = fr.arity;
  const auto& ir = fr.trigger_set;
  const auto& is = fs.trigger_set;

  // xe_i and ye_i
  bool shape_ok = true;
  auto side = [&](const TExpr& e, const std::vector<int>& trig, VarClass tcls, const char* what) {
    for (int i = 0; i < n; ++i) {
      const TExpr& a = e.args[static_cast<std::size_t>(i)];
      if (contains(trig, i)) {
        if (a.kind != TExpr::Kind::Var || a.var.cls != tcls || a.var.index != i) {
          add("S04", std::string(what) + " needs the transition variable " +
                         VarRef{tcls, i, ""}.canonical() + " at " + pos(i),
              a.str());
          shape_ok = false;
        }
      } else if (a.kind != TExpr::Kind::Proc) {
        add("S04", std::string(what) + " needs the process x" + std::to_string(i + 1) + " at " + pos(i),
            a.str());
        shape_ok = false;
      } else if (a.proc != pvar("x", i, false)) {
        add("S05", std::string(what) + " needs the process x" + std::to_string(i + 1) + " at " + pos(i),
            a.str());
        shape_ok = false;
      }
    }
  };
  side(r.chi, ir, VarClass::TX, "chi");
  side(r.zeta, is, VarClass::TY, "zeta");
  if (!shape_ok) return;

  // premises and I
  std::vector<int> idx;
  for (const auto& p : r.premises) {
    bool ok = p.lhs.kind == TExpr::Kind::Var && p.sub.kind == TExpr::Kind::Var &&
              p.rhs.kind == TExpr::Kind::Var && p.lhs.var.cls == VarClass::TX &&
              p.sub.var.cls == VarClass::TY && p.rhs.var.cls == VarClass::TZ &&
              p.lhs.var.index == p.sub.var.index && p.sub.var.index == p.rhs.var.index;
    if (!ok) {
      add("S06", "premise must have the form tx_i ~[ty_i]~> tz_i",
          p.lhs.str() + " ~[" + p.sub.str() + "]~> " + p.rhs.str());
      return;
    }
    int i = p.lhs.var.index;
    if (!contains(ir, i) || !contains(is, i)) {
      add("S07", "premise index outside the trigger sets of r and s", pos(i));
      return;
    }
    if (contains(idx, i)) {
      add("S06", "two premises for the same index", pos(i));
      return;
    }
    idx.push_back(i);
  }

  // variable inventory of the result
  std::vector<VarRef> vs;
  vars_of(r.result, vs);
  std::map<int, int> per_index;
  std::map<std::string, int> per_name;
  for (const auto& v : vs) {
    ++per_name[v.canonical()];
    ++per_index[v.index];
  }
  for (const auto& [name, k] : per_name)
    if (k > 1) add("S08", "result is not univariate", name + " occurs " + std::to_string(k) + " times");
  for (const auto& [i, k] : per_index)
    if (k > 1 && per_name.size() == vs.size())
      add("S08", "result is not univariate", pos(i) + " occurs " + std::to_string(k) + " times");
  for (const auto& v : vs) {
    const int i = v.index;
    const std::string vn = v.canonical();
    if (i >= n) {
      add("S09", "variable outside the permitted classes", vn);
      continue;
    }
    bool in_r = contains(ir, i), in_s = contains(is, i), in_i = contains(idx, i);
    if (in_i) {
      if (v.cls == VarClass::TZ) continue;
      if (v.cls == VarClass::X || v.cls == VarClass::YPrime || v.cls == VarClass::XPrime)
        add("S12", "process variable at an index with a premise", vn);
      else
        add("S09", "variable outside the permitted classes", vn);
    } else if (in_s) {
      if (v.cls != VarClass::YPrime && v.cls != VarClass::TZ)
        add("S09", "variable outside the permitted classes", vn);
    } else if (in_r) {
      if (v.cls == VarClass::X)
        add("S13", "process variable at an index in I_r but not I_s (must be inherited as tx_i)", vn);
      else if (v.cls != VarClass::TX)
        add("S09", "variable outside the permitted classes", vn);
    } else if (v.cls != VarClass::X && v.cls != VarClass::TZ) {
      add("S09", "variable outside the permitted classes", vn);
    }
  }

  // source coherence: Osrc(v) = Otar(s(ye)) on every instance
  if (r.result.kind == TExpr::Kind::Proc) {
    add("S10", "result must be a transition expression", r.result.str());
  } else {
    for (const auto& op : ops_) {
      if (!ops_of(fs, op)) continue;
      std::set<std::string> done;
      for (const Rule& s : tss_.rules_for(op)) {
        if (r.zeta.exact ? s.name != *r.zeta.exact : s.name.family != fam(r.zeta)) continue;
        if (!done.insert(s.name.str()).second) continue;
        Substitution sub;
        for (int i = 0; i < s.arity(); ++i) {
          sub[s.x[static_cast<std::size_t>(i)]] = pvar("x", i, false);
          if (s.triggered(i)) sub[*s.y[static_cast<std::size_t>(i)]] = pvar("y", i, true);
        }
        Term otar = substitute(s.target, sub);
        if (auto m = incoherent(r.result, otar, is)) {
          add("S10", "source of the result differs from the target of zeta", *m);
          break;
        }
      }
    }
  }

  // indicator clause
  bool indicator = false;
  for (const auto& op : ops_) {
    if (!ops_of(fs, op)) continue;
    for (const Rule& s : tss_.rules_for(op)) {
      if (r.zeta.exact ? s.name != *r.zeta.exact : s.name.family != fam(r.zeta)) continue;
      bool allowed = true;
      for (const auto& c : r.conds)
        if (c.subject == "zeta" && c.allowed.count(s.label) == c.negate) allowed = false;
      if (allowed && tss_.labels().is_indicator(s.label)) indicator = true;
    }
  }
  if (!indicator) return;
  std::vector<TExpr> ze;
  for (int i = 0; i < n; ++i) {
    const TExpr& xe = r.chi.args[static_cast<std::size_t>(i)];
    const TExpr& ye = r.zeta.args[static_cast<std::size_t>(i)];
    if (contains(idx, i)) {
      ze.push_back(TExpr::variable(VarRef{VarClass::TZ, i, ""}));
      continue;
    }
    if (xe.kind == TExpr::Kind::Var && ye.kind == TExpr::Kind::Var)
      add("S11", "indicator zeta: xe_i or ye_i must be x_i outside I", pos(i));
    ze.push_back(ye.kind == TExpr::Kind::Proc ? xe : TExpr::process(pvar("y", i, true)));
  }
  TExpr expect = TExpr::ctor(r.chi.family, ze);
  expect.exact = r.chi.exact;
  bool same = r.result.kind == TExpr::Kind::Ctor && fam(r.result) == fam(r.chi) &&
              (!r.chi.exact || r.result.exact == r.chi.exact) &&
              r.result.args.size() == ze.size();
  for (std::size_t i = 0; same && i < ze.size(); ++i) same = r.result.args[i].str() == ze[i].str();
  if (!same)
    add("S11", "indicator zeta: the result must be r(ze_1..ze_n)", "expected " + expect.str());
}

void Checker::check_meta(const MetaRule& m) {
  SuccRule dummy;
  dummy.id = m.id;
  dummy.line = m.line;
  cur_ = &dummy;
  for (const auto& l : m.zeta_labels)
    if (!tss_.labels().is_indicator(l))
      add("S16", "meta rule chi ~[zeta]~> chi admits an action label for zeta", l);
  for (OpKind k : m.kinds)
    if (!tss_.allows(k)) add("S16", "meta rule names an operator outside the signature", op_kind_name(k));
  cur_ = nullptr;
}

}  // namespace

std::vector<Diagnostic> check_de_simone_succ(const Tss& tss) {
  Checker c(tss);
  for (const auto& r : compile_succ_rules(tss)) c.check(r, true);
  auto ops = tss.representative_ops();
  for (const auto& m : compile_meta_rules(tss)) {
    c.check_meta(m);
    for (const auto& op : ops)
      for (const auto& r : expand_meta(tss, m, op)) c.check(r, false);
  }
  return c.take();
}

}  // namespace epcalc
