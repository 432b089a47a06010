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

#include "epcalc/successor_rules.hpp"

#include <cctype>
#include <map>

namespace epcalc {

std::string VarRef::canonical() const {
  std::string i = std::to_string(index + 1);
  switch (cls) {
    case VarClass::X: return "x" + i;
    case VarClass::XPrime: return "x" + i + "'";
    case VarClass::YPrime: return "y" + i + "'";
    case VarClass::ZPrime: return "z" + i + "'";
    case VarClass::TX: return "tx" + i;
    case VarClass::TY: return "ty" + i;
    case VarClass::TZ: return "tz" + i;
    case VarClass::Unknown: return raw;
  }
  return raw;
}

VarRef parse_var_ref(const std::string& name) {
  static const std::map<std::string, std::pair<VarClass, int>> aliases = {
      {"P", {VarClass::X, 0}},       {"Q", {VarClass::X, 1}},
      {"P'", {VarClass::YPrime, 0}}, {"Q'", {VarClass::YPrime, 1}},
      {"t", {VarClass::TX, 0}},      {"u", {VarClass::TX, 1}},
      {"v", {VarClass::TY, 0}},      {"w", {VarClass::TY, 1}},
      {"t'", {VarClass::TZ, 0}},     {"u'", {VarClass::TZ, 1}}};
  VarRef r;
  r.raw = name;
  if (auto it = aliases.find(name); it != aliases.end()) {
    r.cls = it->second.first;
    r.index = it->second.second;
    return r;
  }
  std::size_t pos = 0;
  std::string head;
  while (pos < name.size() && std::isalpha(static_cast<unsigned char>(name[pos]))) head += name[pos++];
  std::size_t digits = pos;
  while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos]))) ++pos;
  if (pos == digits) return r;
  int idx = std::stoi(name.substr(digits, pos - digits));
  if (idx < 1) return r;
  std::string tail = name.substr(pos);
  VarClass cls = VarClass::Unknown;
  if (head == "x" && tail.empty()) cls = VarClass::X;
  else if (head == "x" && tail == "'") cls = VarClass::XPrime;
  else if (head == "y" && tail == "'") cls = VarClass::YPrime;
  else if (head == "z" && tail == "'") cls = VarClass::ZPrime;
  else if (head == "tx" && tail.empty()) cls = VarClass::TX;
  else if (head == "ty" && tail.empty()) cls = VarClass::TY;
  else if (head == "tz" && tail.empty()) cls = VarClass::TZ;
  if (cls == VarClass::Unknown) return r;
  r.cls = cls;
  r.index = idx - 1;
  return r;
}

TExpr TExpr::variable(VarRef v) {
  TExpr e;
  e.kind = Kind::Var;
  e.var = std::move(v);
  return e;
}

TExpr TExpr::ctor(std::string family, std::vector<TExpr> args) {
  TExpr e;
  e.kind = Kind::Ctor;
  e.family = std::move(family);
  e.args = std::move(args);
  return e;
}

TExpr TExpr::process(Term t) {
  TExpr e;
  e.kind = Kind::Proc;
  e.proc = std::move(t);
  return e;
}

std::string TExpr::str() const {
  switch (kind) {
    case Kind::Var: return var.canonical();
    case Kind::Proc: return proc.valid() ? proc.str() : "?";
    case Kind::Ctor: {
      std::string s = exact ? exact->str() : family;
      s += "(";
      for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + args[i].str();
      return s + ")";
    }
  }
  return "?";
}

std::string SuccRule::str() const {
  std::string s;
  for (const auto& p : premises)
    s += p.lhs.str() + " ~[" + p.sub.str() + "]~> " + p.rhs.str() + "; ";
  s += chi.str() + " ~[" + zeta.str() + "]~> " + result.str();
  return s;
}

}  // namespace epcalc
