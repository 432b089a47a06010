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

#include "langspec.hpp"

namespace epcalc::detail {

namespace {

std::optional<std::string> mode_value(const std::string& m, const Env& env) {
  auto it = env.find(m);
  if (it != env.end() && it->second.kind == MetaValue::Kind::Label) return it->second.label;
  if (m == "!" || m == "?" || m == ":") return m;
  return std::nullopt;
}

}  // namespace

std::optional<Label> eval_label(const LabExpr& e, const Env& env) {
  switch (e.kind) {
    case LabExpr::Kind::Name: {
      auto it = env.find(e.name);
      if (it == env.end()) return e.name;
      if (it->second.kind != MetaValue::Kind::Label) return std::nullopt;
      return it->second.label;
    }
    case LabExpr::Kind::Co: {
      auto inner = eval_label(e.kids[0], env);
      if (!inner) return std::nullopt;
      return complement(*inner);
    }
    case LabExpr::Kind::Mode: {
      std::string base = e.name;
      auto it = env.find(e.name);
      if (it != env.end()) {
        if (it->second.kind != MetaValue::Kind::Label) return std::nullopt;
        base = it->second.label;
      }
      std::vector<char> ms;
      for (const auto& m : e.modes) {
        auto v = mode_value(m, env);
        if (!v || v->size() != 1) return std::nullopt;
        ms.push_back((*v)[0]);
      }
      char mode = ms[0];
      if (ms.size() == 2) {
        auto c = broadcast_compose(ms[0], ms[1]);
        if (!c) return std::nullopt;
        mode = *c;
      }
      return base + mode;
    }
    case LabExpr::Kind::Apply: {
      auto it = env.find(e.name);
      if (it == env.end() || it->second.kind != MetaValue::Kind::Relabel) return std::nullopt;
      auto inner = eval_label(e.kids[0], env);
      if (!inner) return std::nullopt;
      return relabel_label(it->second.mapping, *inner);
    }
  }
  return std::nullopt;
}

std::vector<std::string> eval_set(const SetExpr& s, const Env& env, const LabelUniverse& u) {
  std::set<std::string> out;
  const Alphabets& al = u.alphabets();
  for (const auto& a : s.parts) {
    switch (a.kind) {
      case SetAtom::Kind::Class: {
        if (a.name == "Act") {
          for (const auto& l : u.actions()) out.insert(l);
        } else if (a.name == "Lab") {
          for (const auto& l : u.all()) out.insert(l);
        } else if (a.name == "In") {
          for (const auto& l : u.indicators()) out.insert(l);
        } else if (a.name == "B") {
          out.insert(al.broadcasts.begin(), al.broadcasts.end());
        } else if (a.name == "Modes") {
          out.insert({"!", "?", ":"});
        } else if (auto ls = label_class(al, a.name)) {
          out.insert(ls->begin(), ls->end());
        }
        break;
      }
      case SetAtom::Kind::Enum:
        for (const auto& item : a.items)
          if (auto l = eval_label(item, env)) out.insert(*l);
        break;
      case SetAtom::Kind::Meta:
      case SetAtom::Kind::CoMeta: {
        auto it = env.find(a.name);
        if (it == env.end()) break;
        const std::string pre = a.kind == SetAtom::Kind::CoMeta ? "'" : "";
        if (it->second.kind == MetaValue::Kind::Names) {
          for (const auto& n : it->second.names) out.insert(pre + n);
        } else if (it->second.kind == MetaValue::Kind::Label) {
          if (pre.empty()) out.insert(it->second.label);
          else if (auto c = complement(it->second.label)) out.insert(*c);
        }
        break;
      }
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Env> expand_fors(const std::vector<ForClause>& fors, const Env& base,
                             const LabelUniverse& u) {
  std::vector<Env> cur{base};
  for (const auto& f : fors) {
    std::vector<Env> next;
    for (const auto& env : cur) {
      auto it = env.find(f.var);
      std::vector<std::string> values = eval_set(f.set, env, u);
      for (const auto& v : values) {
        // A variable already bound (e.g. by the operator instance) filters.
        if (it != env.end()) {
          if (it->second.kind == MetaValue::Kind::Label && it->second.label == v)
            next.push_back(env);
          continue;
        }
        Env e = env;
        MetaValue mv;
        mv.label = v;
        e[f.var] = mv;
        next.push_back(std::move(e));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

bool eval_cond(const Cond& c, const Env& env, const LabelUniverse& u) {
  auto lhs = eval_label(c.lhs, env);
  if (!lhs) return false;
  switch (c.op) {
    case Cond::Op::Eq:
    case Cond::Op::Ne: {
      auto rhs = eval_label(c.rhs, env);
      if (!rhs) return false;
      return (*lhs == *rhs) == (c.op == Cond::Op::Eq);
    }
    case Cond::Op::In:
    case Cond::Op::NotIn: {
      auto set = eval_set(c.set, env, u);
      bool in = std::find(set.begin(), set.end(), *lhs) != set.end();
      return in == (c.op == Cond::Op::In);
    }
  }
  return false;
}

std::string lab_expr_str(const LabExpr& e) {
  switch (e.kind) {
    case LabExpr::Kind::Name: return e.name;
    case LabExpr::Kind::Co: return "'" + lab_expr_str(e.kids[0]);
    case LabExpr::Kind::Mode:
      if (e.modes.size() == 1 && e.modes[0].size() == 1 &&
          std::string("!?:").find(e.modes[0]) != std::string::npos)
        return e.name + e.modes[0];
      return e.name + "{" + e.modes[0] + (e.modes.size() > 1 ? "*" + e.modes[1] : "") + "}";
    case LabExpr::Kind::Apply: return e.name + "(" + lab_expr_str(e.kids[0]) + ")";
  }
  return "?";
}

}  // namespace epcalc::detail
