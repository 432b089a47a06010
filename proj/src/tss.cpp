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

#include "epcalc/tss.hpp"

#include <algorithm>

#include "epcalc/error.hpp"
#include "langspec.hpp"

namespace epcalc {

using detail::Ast;
using detail::Env;
using detail::MetaValue;
using detail::RuleTemplate;

std::string Diagnostic::str() const {
  std::string s = code + " " + rule;
  if (line > 0) s += " (line " + std::to_string(line) + ")";
  s += ": " + clause;
  if (!detail.empty()) s += ": " + detail;
  return s;
}

std::string RuleName::str() const {
  if (params.empty()) return family;
  if (params.size() == 1 && params[0].find(',') == std::string::npos)
    return family + "_" + params[0];
  if (params.size() == 1 && params[0].front() == '[') return family + "_" + params[0];
  std::string s = family + "_{";
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + params[i];
  return s + "}";
}

std::vector<int> Rule::trigger_set() const {
  std::vector<int> out;
  for (int i = 0; i < arity(); ++i)
    if (triggered(i)) out.push_back(i);
  return out;
}

std::string Rule::str() const {
  std::string s;
  for (int i = 0; i < arity(); ++i) {
    if (!triggered(i)) continue;
    if (!s.empty()) s += ", ";
    s += x[static_cast<std::size_t>(i)] + " -" + *trigger[static_cast<std::size_t>(i)] + "-> " +
         *y[static_cast<std::size_t>(i)];
  }
  std::vector<Term> args;
  for (const auto& v : x) args.push_back(Term::var(v));
  std::string src = Term::op(op, args).str();
  return (s.empty() ? "" : s + " / ") + src + " -" + label + "-> " + target.str();
}

namespace {

std::optional<OpKind> source_kind(const Ast& a) {
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

bool is_meta(const RuleTemplate& rt, const std::string& name) {
  if (std::find(rt.params.begin(), rt.params.end(), name) != rt.params.end()) return true;
  return std::any_of(rt.fors.begin(), rt.fors.end(),
                     [&](const detail::ForClause& f) { return f.var == name; });
}

std::string label_or(const Env& env, const std::string& name) {
  auto it = env.find(name);
  if (it != env.end() && it->second.kind == MetaValue::Kind::Label) return it->second.label;
  return name;
}

Term ast_to_term(const Ast& a, const Env& env) {
  auto kids = [&]() {
    std::vector<Term> out;
    for (const auto& k : a.kids) out.push_back(ast_to_term(k, env));
    return out;
  };
  switch (a.kind) {
    case Ast::Kind::Nil: return Term::nil();
    case Ast::Kind::Var: return Term::var(a.text);
    case Ast::Kind::Prefix: return Term::op(Operator::prefix(label_or(env, a.text)), kids());
    case Ast::Kind::Choice: return Term::op(Operator::choice(), kids());
    case Ast::Kind::Par: return Term::op(Operator::parallel(), kids());
    case Ast::Kind::Signal: return Term::op(Operator::signal(label_or(env, a.text)), kids());
    case Ast::Kind::Restrict: {
      if (a.meta.empty()) return Term::op(Operator::restrict(a.set), kids());
      auto it = env.find(a.meta);
      if (it == env.end() || it->second.kind != MetaValue::Kind::Names)
        throw Error("restriction parameter '" + a.meta + "' is unbound");
      return Term::op(Operator::restrict(it->second.names), kids());
    }
    case Ast::Kind::Relabel: {
      if (a.meta.empty()) return Term::op(Operator::relabel(a.mapping), kids());
      auto it = env.find(a.meta);
      if (it == env.end() || it->second.kind != MetaValue::Kind::Relabel)
        throw Error("relabelling parameter '" + a.meta + "' is unbound");
      return Term::op(Operator::relabel(it->second.mapping), kids());
    }
    case Ast::Kind::Call: {
      auto k = kids();
      int n = static_cast<int>(k.size());
      return Term::op(Operator::custom(a.text, n), std::move(k));
    }
    case Ast::Kind::Rec: {
      std::vector<std::pair<std::string, Term>> spec;
      for (const auto& [x, b] : a.bindings) spec.emplace_back(x, ast_to_term(b, env));
      return Term::rec(a.text, std::move(spec));
    }
  }
  throw Error("bad rule target");
}

std::string param_string(const MetaValue& v) {
  switch (v.kind) {
    case MetaValue::Kind::Label: return v.label;
    case MetaValue::Kind::Names: {
      if (v.names.empty()) return "{}";
      std::string s;
      for (std::size_t i = 0; i < v.names.size(); ++i) s += (i ? "," : "") + v.names[i];
      return s;
    }
    case MetaValue::Kind::Relabel: {
      if (v.mapping.empty()) return "id";
      std::string s;
      for (std::size_t i = 0; i < v.mapping.size(); ++i)
        s += (i ? "," : "") + v.mapping[i].first + "->" + v.mapping[i].second;
      return "[" + s + "]";
    }
  }
  return "?";
}

/// Positions of the source arguments, or nullopt if the source is not an
/// operator applied to variables.
std::optional<std::vector<std::string>> source_vars(const RuleTemplate& rt) {
  if (!source_kind(rt.source)) return std::nullopt;
  std::vector<std::string> xs;
  for (const auto& k : rt.source.kids) {
    if (k.kind != Ast::Kind::Var) return std::nullopt;
    xs.push_back(k.text);
  }
  return xs;
}

/// Base environment binding the operator parameter, or nullopt if the
/// template does not apply to `op`.
std::optional<Env> bind_operator(const RuleTemplate& rt, const Operator& op) {
  auto kind = source_kind(rt.source);
  if (!kind || *kind != op.kind) return std::nullopt;
  const Ast& s = rt.source;
  Env env;
  switch (op.kind) {
    case OpKind::Prefix:
    case OpKind::Signal:
      if (is_meta(rt, s.text)) {
        MetaValue v;
        v.label = op.param;
        env[s.text] = v;
      } else if (s.text != op.param) {
        return std::nullopt;
      }
      break;
    case OpKind::Restrict:
      if (!s.meta.empty()) {
        MetaValue v;
        v.kind = MetaValue::Kind::Names;
        v.names = op.names;
        env[s.meta] = v;
      } else if (Operator::restrict(s.set).names != op.names) {
        return std::nullopt;
      }
      break;
    case OpKind::Relabel:
      if (!s.meta.empty()) {
        MetaValue v;
        v.kind = MetaValue::Kind::Relabel;
        v.mapping = op.mapping;
        env[s.meta] = v;
      } else if (Operator::relabel(s.mapping).mapping != op.mapping) {
        return std::nullopt;
      }
      break;
    case OpKind::Custom:
      if (s.text != op.param || static_cast<int>(s.kids.size()) != op.custom_arity)
        return std::nullopt;
      break;
    default: break;
  }
  return env;
}

std::vector<Rule> instantiate(const RuleTemplate& rt, const Operator& op,
                              const LabelUniverse& u) {
  std::vector<Rule> out;
  auto xs = source_vars(rt);
  if (!xs) return out;
  auto base = bind_operator(rt, op);
  if (!base) return out;
  std::vector<int> pos_of_premise;
  for (const auto& p : rt.premises) {
    auto it = std::find(xs->begin(), xs->end(), p.source);
    if (it == xs->end()) return out;
    pos_of_premise.push_back(static_cast<int>(it - xs->begin()));
  }
  for (const Env& env : detail::expand_fors(rt.fors, *base, u)) {
    bool ok = true;
    for (const auto& c : rt.conds)
      if (!detail::eval_cond(c, env, u)) ok = false;
    if (!ok) continue;
    Rule r;
    r.op = op;
    r.x = *xs;
    r.y.assign(xs->size(), std::nullopt);
    r.trigger.assign(xs->size(), std::nullopt);
    for (std::size_t k = 0; k < rt.premises.size() && ok; ++k) {
      auto l = detail::eval_label(rt.premises[k].label, env);
      auto i = static_cast<std::size_t>(pos_of_premise[k]);
      if (!l || r.trigger[i]) {
        ok = false;
        break;
      }
      r.trigger[i] = *l;
      r.y[i] = rt.premises[k].target;
    }
    if (!ok) continue;
    auto lab = detail::eval_label(rt.label, env);
    if (!lab) continue;
    r.label = *lab;
    try {
      r.target = ast_to_term(rt.target, env);
    } catch (const Error&) {
      continue;
    }
    r.name.family = rt.family;
    for (const auto& p : rt.params) {
      auto it = env.find(p);
      r.name.params.push_back(it == env.end() ? p : param_string(it->second));
    }
    r.line = rt.line;
    out.push_back(std::move(r));
  }
  return out;
}

bool rule_less(const Rule& a, const Rule& b) {
  if (a.name != b.name) return a.name < b.name;
  if (a.trigger != b.trigger) return a.trigger < b.trigger;
  return a.label < b.label;
}

}  // namespace

Tss::Tss(std::shared_ptr<const detail::LangSpec> spec, Alphabets alphabets)
    : spec_(std::move(spec)),
      labels_(alphabets, spec_->action_classes, spec_->indicator_classes) {
  for (const auto& rt : spec_->rules) {
    auto kind = source_kind(rt.source);
    auto xs = source_vars(rt);
    if (!kind || !xs) continue;
    FamilyInfo fi;
    fi.kind = *kind;
    if (*kind == OpKind::Custom) fi.custom = rt.source.text;
    fi.arity = static_cast<int>(xs->size());
    for (const auto& p : rt.premises) {
      auto it = std::find(xs->begin(), xs->end(), p.source);
      if (it != xs->end()) fi.trigger_set.push_back(static_cast<int>(it - xs->begin()));
    }
    std::sort(fi.trigger_set.begin(), fi.trigger_set.end());
    fi.line = rt.line;
    families_.emplace(rt.family, fi);
  }
}

const std::string& Tss::language() const { return spec_->name; }

TermSignature Tss::signature() const {
  TermSignature sig;
  sig.allow_any = false;
  sig.kinds = spec_->kinds;
  sig.custom = spec_->custom;
  sig.labels = &labels_;
  return sig;
}

bool Tss::allows(OpKind k) const { return spec_->kinds.count(k) != 0; }

Term Tss::parse(const std::string& text) const { return parse_term(text, signature()); }

const FamilyInfo* Tss::family(const std::string& name) const {
  auto it = families_.find(name);
  return it == families_.end() ? nullptr : &it->second;
}

const std::vector<Rule>& Tss::rules_for(const Operator& op) const {
  std::string key = op.symbol();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
  }
  auto rules = std::make_unique<std::vector<Rule>>();
  for (const auto& rt : spec_->rules) {
    auto rs = instantiate(rt, op, labels_);
    rules->insert(rules->end(), std::make_move_iterator(rs.begin()),
                  std::make_move_iterator(rs.end()));
  }
  std::sort(rules->begin(), rules->end(), rule_less);
  rules->erase(std::unique(rules->begin(), rules->end(),
                           [](const Rule& a, const Rule& b) {
                             return a.name == b.name && a.trigger == b.trigger &&
                                    a.label == b.label && a.target == b.target;
                           }),
               rules->end());
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, fresh] = cache_.emplace(key, std::move(rules));
  return *it->second;
}

std::vector<Operator> Tss::representative_ops() const {
  std::vector<Operator> ops;
  const Alphabets& al = alphabets();
  for (OpKind k : spec_->kinds) {
    switch (k) {
      case OpKind::Nil: ops.push_back(Operator::nil()); break;
      case OpKind::Prefix:
        for (const auto& a : labels_.actions()) ops.push_back(Operator::prefix(a));
        break;
      case OpKind::Choice: ops.push_back(Operator::choice()); break;
      case OpKind::Parallel: ops.push_back(Operator::parallel()); break;
      case OpKind::Restrict: {
        std::vector<std::string> ch(al.channels.begin(), al.channels.end());
        if (ch.size() <= 4) {
          for (unsigned m = 0; m < (1u << ch.size()); ++m) {
            std::vector<std::string> s;
            for (std::size_t i = 0; i < ch.size(); ++i)
              if (m & (1u << i)) s.push_back(ch[i]);
            ops.push_back(Operator::restrict(s));
          }
        } else {
          ops.push_back(Operator::restrict({}));
          for (const auto& c : ch) ops.push_back(Operator::restrict({c}));
          ops.push_back(Operator::restrict(ch));
        }
        break;
      }
      case OpKind::Relabel: {
        ops.push_back(Operator::relabel({}));
        for (const auto* names : {&al.channels, &al.broadcasts, &al.signals})
          for (const auto& a : *names)
            for (const auto& b : *names)
              if (a != b) ops.push_back(Operator::relabel({{a, b}}));
        break;
      }
      case OpKind::Signal:
        for (const auto& s : al.signals) ops.push_back(Operator::signal(s));
        break;
      case OpKind::Custom:
        for (const auto& [sym, n] : spec_->custom) ops.push_back(Operator::custom(sym, n));
        break;
    }
  }
  return ops;
}

std::vector<const Rule*> Tss::all_rules() const {
  std::vector<const Rule*> out;
  for (const auto& op : representative_ops())
    for (const auto& r : rules_for(op)) out.push_back(&r);
  return out;
}

std::vector<const Rule*> Tss::rules_named(const std::string& name) const {
  std::vector<const Rule*> out;
  for (const Rule* r : all_rules())
    if (r->name.str() == name || r->name.family == name) out.push_back(r);
  if (out.empty())
    throw UnknownName("no rule named '" + name + "' in language " + language());
  return out;
}

const Rule* Tss::find_rule(const RuleName& name, const Operator& op,
                           const std::vector<std::optional<Label>>& labels) const {
  for (const auto& r : rules_for(op))
    if (r.name == name && r.trigger == labels) return &r;
  return nullptr;
}

std::vector<const Rule*> Tss::find_by_family(const std::string& family, const Operator& op,
                                             const std::vector<std::optional<Label>>& labels) const {
  std::vector<const Rule*> out;
  for (const auto& r : rules_for(op))
    if (r.name.family == family && r.trigger == labels) out.push_back(&r);
  return out;
}

}  // namespace epcalc
