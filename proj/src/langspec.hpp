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

// Parsed form of a language-definition file: rule templates with label
// metavariables, before expansion over the alphabets.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "epcalc/labels.hpp"
#include "epcalc/successor_rules.hpp"
#include "epcalc/syntax.hpp"
#include "lexer.hpp"

namespace epcalc::detail {

struct LabExpr {
  enum class Kind { Name, Co, Mode, Apply };
  Kind kind = Kind::Name;
  std::string name;                // label, metavariable, broadcast base, or function
  std::vector<std::string> modes;  // Mode: one mode, or two composed with '*'
  std::vector<LabExpr> kids;       // Co, Apply: the operand
};

struct SetAtom {
  enum class Kind { Class, Enum, Meta, CoMeta };
  Kind kind = Kind::Class;
  std::string name;             // class name or metavariable
  std::vector<LabExpr> items;   // Enum
};

struct SetExpr {
  std::vector<SetAtom> parts;   // union
};

struct ForClause {
  std::string var;
  SetExpr set;
};

struct Cond {
  enum class Op { Eq, Ne, In, NotIn };
  Op op = Op::Eq;
  LabExpr lhs;
  LabExpr rhs;   // Eq, Ne
  SetExpr set;   // In, NotIn
};

struct PremiseTemplate {
  std::string source;
  LabExpr label;
  std::string target;
  int line = 0;
};

struct RuleTemplate {
  std::string family;
  std::vector<std::string> params;
  std::vector<ForClause> fors;
  std::vector<PremiseTemplate> premises;
  Ast source;
  LabExpr label;
  Ast target;
  std::vector<Cond> conds;
  int line = 0;
};

/// Label side condition of a successor rule before for-expansion.
struct SuccCond {
  std::string subject;   // canonical transition variable, "chi" or "zeta"
  std::string raw;       // as written
  Cond::Op op = Cond::Op::In;
  LabExpr value;         // Eq, Ne
  SetExpr set;           // In, NotIn
};

struct SuccTemplate {
  std::string id;
  std::vector<ForClause> fors;
  TExpr chi, zeta, result;
  std::vector<SuccPremise> premises;
  std::vector<SuccCond> conds;
  int line = 0;
};

struct MetaTemplate {
  std::string id;
  std::set<OpKind> kinds;
  bool rec = false;
  SetExpr zeta_set;
  int line = 0;
};

struct LangSpec {
  std::string name;
  std::string source_name;
  Alphabets alphabets;
  std::vector<std::string> action_classes;
  std::vector<std::string> indicator_classes;
  std::set<OpKind> kinds;
  std::map<std::string, int> custom;   // custom operator symbol -> arity
  std::vector<RuleTemplate> rules;
  std::vector<SuccTemplate> succ;
  std::vector<MetaTemplate> meta;
};

/// Parse a language-definition file. Throws ParseError.
LangSpec parse_lang(const std::string& text, const std::string& source_name);

/// Values bound to metavariables while expanding templates.
struct MetaValue {
  enum class Kind { Label, Names, Relabel };
  Kind kind = Kind::Label;
  std::string label;
  std::vector<std::string> names;
  Relabelling mapping;
};

using Env = std::map<std::string, MetaValue>;

/// Evaluate a label expression; nullopt when undefined (complement of tau,
/// undefined broadcast composition, unbound metavariable, ...).
std::optional<Label> eval_label(const LabExpr& e, const Env& env);

/// Elements of a set expression: labels, broadcast names, or mode symbols.
std::vector<std::string> eval_set(const SetExpr& s, const Env& env, const LabelUniverse& u);

/// Expand the for-clauses into every combination of bindings.
std::vector<Env> expand_fors(const std::vector<ForClause>& fors, const Env& base,
                             const LabelUniverse& u);

bool eval_cond(const Cond& c, const Env& env, const LabelUniverse& u);

std::string lab_expr_str(const LabExpr& e);

}  // namespace epcalc::detail
