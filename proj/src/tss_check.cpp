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
#include <functional>
#include <set>
#include <tuple>

#include "epcalc/tss.hpp"
#include "langspec.hpp"

namespace epcalc {

using detail::Ast;
using detail::RuleTemplate;

namespace {

class Collector {
public:
  void add(std::string code, std::string rule, std::string clause, std::string detail, int line) {
    auto key = std::make_tuple(code, rule, detail);
    if (!seen_.insert(key).second) return;
    out_.push_back({std::move(code), std::move(rule), std::move(clause), std::move(detail), line});
  }
  std::vector<Diagnostic> take() { return std::move(out_); }

private:
  std::set<std::tuple<std::string, std::string, std::string>> seen_;
  std::vector<Diagnostic> out_;
};

std::optional<OpKind> kind_of(const Ast& a) {
  switch (a.kind) {
    case Ast::Kind::Nil: return OpKind::Nil;
    case Ast::Kind::Prefix: return OpKind::Prefix;
    case Ast::Kind::Choice: return OpKind::Choice;
    case Ast::Kind::Par: return OpKind::Parallel;
    case Ast::Kind::Restrict: return OpKind::Restrict;
    case Ast::Kind::Relabel: return OpKind::Relabel;
    case Ast::Kind::Signal: return OpKind::Signal;
    case Ast::Kind::Call: return OpKind::Custom;
    default: return std::nullopt;
  }
}

/// Structural checks on one template. Returns false when the template is
/// too malformed to be instantiated.
bool check_template(const RuleTemplate& rt, const detail::LangSpec& spec, Collector& c) {
  const std::string& name = rt.family;
  if (name == kRecAct || name == kRecIn)
    c.add("T09", name, "reserved rule name", name + " is reserved for recursion", rt.line);
  if (rt.source.kind == Ast::Kind::Rec) {
    c.add("T10", name, "conclusion source is a recursive call",
          "rules for rec are built in", rt.line);
    return false;
  }
  auto kind = kind_of(rt.source);
  if (!kind) {
    c.add("T11", name, "conclusion source is not an operator applied to variables",
          "source is the variable " + rt.source.text, rt.line);
    return false;
  }
  if (!spec.kinds.count(*kind)) {
    c.add("T11", name, "operator not in the signature", op_kind_name(*kind), rt.line);
    return false;
  }
  if (*kind == OpKind::Custom) {
    auto it = spec.custom.find(rt.source.text);
    if (it == spec.custom.end() || it->second != static_cast<int>(rt.source.kids.size())) {
      c.add("T11", name, "operator not in the signature",
            rt.source.text + "/" + std::to_string(rt.source.kids.size()), rt.line);
      return false;
    }
  }
  std::vector<std::string> xs;
  for (const auto& k : rt.source.kids) {
    if (k.kind != Ast::Kind::Var) {
      c.add("T11", name, "conclusion source is not an operator applied to variables",
            "argument is not a variable", rt.line);
      return false;
    }
    xs.push_back(k.text);
  }
  bool ok = true;
  std::set<std::string> sources;
  for (const auto& p : rt.premises) {
    if (std::find(xs.begin(), xs.end(), p.source) == xs.end()) {
      c.add("T13", name, "premise source is not an argument variable", p.source, p.line);
      ok = false;
    } else if (!sources.insert(p.source).second) {
      c.add("T13", name, "two premises for the same argument", p.source, p.line);
      ok = false;
    }
  }
  std::vector<std::string> all = xs;
  for (const auto& p : rt.premises) all.push_back(p.target);
  std::set<std::string> uniq(all.begin(), all.end());
  if (uniq.size() != all.size())
    c.add("T01", name, "variables x_i and y_i are not pairwise distinct", "", rt.line);
  return ok;
}

FamilyInfo shape_of(const RuleTemplate& rt) {
  FamilyInfo fi;
  fi.kind = *kind_of(rt.source);
  if (fi.kind == OpKind::Custom) fi.custom = rt.source.text;
  fi.arity = static_cast<int>(rt.source.kids.size());
  for (const auto& p : rt.premises)
    for (int i = 0; i < fi.arity; ++i)
      if (rt.source.kids[static_cast<std::size_t>(i)].text == p.source) fi.trigger_set.push_back(i);
  std::sort(fi.trigger_set.begin(), fi.trigger_set.end());
  return fi;
}

bool rec_closed(const Term& t) {
  if (t.is_var()) return true;
  if (t.is_rec()) {
    if (!t.is_closed()) return false;
    for (const auto& [x, b] : t.spec())
      if (!rec_closed(b)) return false;
    return true;
  }
  for (const auto& a : t.args())
    if (!rec_closed(a)) return false;
  return true;
}

void check_rule(const Rule& r, const LabelUniverse& u, Collector& c) {
  const std::string name = r.name.str();
  std::set<std::string> allowed;
  for (int i = 0; i < r.arity(); ++i)
    allowed.insert(r.triggered(i) ? *r.y[static_cast<std::size_t>(i)]
                                  : r.x[static_cast<std::size_t>(i)]);
  for (const auto& v : r.target.free_vars())
    if (!allowed.count(v))
      c.add("T02", name, "target variable outside {x_i | i not in I} and {y_i | i in I}", v,
            r.line);
  if (!is_univariate(r.target))
    c.add("T03", name, "target is not univariate", r.target.str(), r.line);
  if (!rec_closed(r.target))
    c.add("T04", name, "recursive call in the target has free variables", r.target.str(), r.line);
  for (int i = 0; i < r.arity(); ++i)
    if (r.triggered(i) && !u.contains(*r.trigger[static_cast<std::size_t>(i)]))
      c.add("T12", name, "unknown label", *r.trigger[static_cast<std::size_t>(i)], r.line);
  if (!u.contains(r.label)) {
    c.add("T12", name, "unknown label", r.label, r.line);
    return;
  }
  if (!u.is_indicator(r.label)) return;
  for (int i = 0; i < r.arity(); ++i)
    if (r.triggered(i) && !u.is_indicator(*r.trigger[static_cast<std::size_t>(i)]))
      c.add("T05", name, "indicator conclusion with an action premise",
            *r.trigger[static_cast<std::size_t>(i)], r.line);
  std::vector<Term> zs;
  for (int i = 0; i < r.arity(); ++i)
    zs.push_back(Term::var(r.triggered(i) ? *r.y[static_cast<std::size_t>(i)]
                                          : r.x[static_cast<std::size_t>(i)]));
  if (r.target != Term::op(r.op, zs))
    c.add("T06", name, "indicator rule target is not Op(z_1..z_n)", r.target.str(), r.line);
}

}  // namespace

std::vector<Diagnostic> Tss::check_de_simone() const {
  Collector c;
  std::map<std::string, std::pair<FamilyInfo, int>> shapes;
  for (const auto& rt : spec_->rules) {
    if (!check_template(rt, *spec_, c)) continue;
    FamilyInfo fi = shape_of(rt);
    auto [it, fresh] = shapes.emplace(rt.family, std::make_pair(fi, rt.line));
    if (fresh) continue;
    const FamilyInfo& g = it->second.first;
    if (g.kind != fi.kind || g.custom != fi.custom || g.arity != fi.arity ||
        g.trigger_set != fi.trigger_set)
      c.add("T07", rt.family, "rule family is not uniform in operator and trigger set",
            "differs from line " + std::to_string(it->second.second), rt.line);
  }

  std::map<std::string, std::vector<const Rule*>> by_name;
  for (const Rule* r : all_rules()) {
    check_rule(*r, labels_, c);
    by_name[r->name.str()].push_back(r);
  }
  for (const auto& [name, rs] : by_name) {
    const Rule& a = *rs.front();
    for (std::size_t k = 1; k < rs.size(); ++k) {
      const Rule& b = *rs[k];
      if (!(a.op == b.op) || a.target != b.target || a.trigger_set() != b.trigger_set()) {
        c.add("T07", name, "rules sharing a name differ in type, target or trigger set",
              a.str() + " vs " + b.str(), b.line);
      }
    }
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = i + 1; j < rs.size(); ++j)
        if (rs[i]->trigger == rs[j]->trigger && rs[i]->op == rs[j]->op)
          c.add("T08", name, "two rules with the same name and trigger",
                rs[i]->str() + " vs " + rs[j]->str(), rs[j]->line);
  }
  return c.take();
}

}  // namespace epcalc
