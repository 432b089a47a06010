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

// Successor rules in canonical variable form. The variable expressions are
//   x_i  x'_i  y'_i  z'_i          process variables
//   tx_i ty_i tz_i                 transition variables with the implied
//                                  literals x_i -> x'_i, x_i -> y'_i and
//                                  y'_i -> z'_i (or x_i -> z'_i)
// and are spelled "x1", "x1'", "y1'", "z1'", "tx1", "ty1", "tz1".

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epcalc/syntax.hpp"
#include "epcalc/tss.hpp"

namespace epcalc {

enum class VarClass { X, XPrime, YPrime, ZPrime, TX, TY, TZ, Unknown };

struct VarRef {
  VarClass cls = VarClass::Unknown;
  int index = 0;     // 0-based
  std::string raw;   // spelling as written, for diagnostics

  bool is_transition() const {
    return cls == VarClass::TX || cls == VarClass::TY || cls == VarClass::TZ;
  }
  std::string canonical() const;
  friend bool operator==(const VarRef& a, const VarRef& b) {
    return a.cls == b.cls && a.index == b.index && (a.cls != VarClass::Unknown || a.raw == b.raw);
  }
};

/// Map a written variable (alias P, Q, P', Q', t, u, v, w, t', u' or an
/// indexed form) to its canonical reference; Unknown if unrecognised.
VarRef parse_var_ref(const std::string& name);

/// Open transition expression used in successor rules.
struct TExpr {
  enum class Kind { Var, Ctor, Proc };
  Kind kind = Kind::Proc;
  VarRef var;                       // Var
  std::string family;               // Ctor
  std::optional<RuleName> exact;    // Ctor with a fixed rule name
  std::vector<TExpr> args;          // Ctor
  Term proc;                        // Proc, over canonical process variables

  static TExpr variable(VarRef v);
  static TExpr ctor(std::string family, std::vector<TExpr> args);
  static TExpr process(Term t);

  std::string str() const;
};

struct LabelCond {
  std::string subject;   // "chi", "zeta" or a canonical transition variable
  std::set<Label> allowed;
  bool negate = false;
};

struct SuccPremise {
  TExpr lhs, sub, rhs;
};

/// One concrete successor rule: premises / chi ~[zeta]~> result.
struct SuccRule {
  std::string id;
  std::string binding;   // for-clause instance, e.g. "b=b"
  int line = 0;
  TExpr chi, zeta, result;
  std::vector<SuccPremise> premises;
  std::vector<LabelCond> conds;

  std::string name() const { return binding.empty() ? id : id + "[" + binding + "]"; }
  std::string str() const;
};

/// The meta rule  chi ~[zeta]~> chi  (side condition on the label of zeta),
/// converted into De Simone successor rules per operator instance.
struct MetaRule {
  std::string id;
  std::set<OpKind> kinds;
  bool rec = false;
  std::set<Label> zeta_labels;
  int line = 0;
};

}  // namespace epcalc
