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

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "epcalc/labels.hpp"
#include "epcalc/syntax.hpp"
#include "epcalc/tss.hpp"

namespace epcalc {

struct TransNode;

/// A transition: a proof tree, identified with its transition expression.
/// Interned, so equality is identity of the canonical name. Open
/// transitions carry variable leaves (tx :: p -a-> q).
class Transition {
public:
  Transition() = default;

  enum class Kind { Var, Ctor, RecAct, RecIn };

  /// Variable leaf (name :: source -label-> target).
  static Transition var(std::string name, Term source, Label label, Term target);
  /// Apply a rule; `args[i]` is a Transition at triggered positions and a
  /// Term elsewhere. Throws Error when the arguments do not fit the rule.
  using Arg = std::variant<Term, Transition>;
  static Transition ctor(const Rule& rule, std::vector<Arg> args);
  /// recAct / recIn over the call `rec` and a transition of its unfolding.
  static Transition rec(Kind kind, Term call, Transition sub);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  const Term& source() const;
  const Label& label() const;
  const Term& target() const;

  const Rule* rule() const;                 // Ctor
  const std::vector<Arg>& args() const;     // Ctor
  const Term& call() const;                 // RecAct, RecIn
  const Transition& sub() const;            // RecAct, RecIn
  const std::string& var_name() const;      // Var

  /// The transition expression, e.g. "(recAct(Y,{Y = a.Y},act_a (rec ...))) parR q".
  const std::string& str() const;
  std::size_t id() const;

  bool is_closed() const;
  /// Direct subtransitions in argument order.
  std::vector<Transition> children() const;

  friend bool operator==(const Transition& a, const Transition& b) { return a.node_ == b.node_; }
  friend bool operator!=(const Transition& a, const Transition& b) { return a.node_ != b.node_; }
  friend bool operator<(const Transition& a, const Transition& b) { return a.id() < b.id(); }

private:
  std::shared_ptr<const TransNode> node_;
  friend Transition intern_transition(std::shared_ptr<TransNode>);
};

struct TransNode {
  Transition::Kind kind = Transition::Kind::Var;
  const Rule* rule = nullptr;
  std::vector<Transition::Arg> args;
  Term call;
  Transition sub;
  std::string var;
  Term source;
  Label label;
  Term target;
  bool closed = true;
  std::string name;
  std::size_t id = 0;
};

struct TransitionHash {
  std::size_t operator()(const Transition& t) const { return t.id(); }
};

/// One node of a proof tree: the literal it proves and the rule applied.
struct ProofNode {
  Term source;
  Label label;
  Term target;
  std::string rule;   // rule name, "recAct", "recIn", or the variable for leaves
  std::vector<ProofNode> children;
};

ProofNode proof_tree(const Transition& t);
/// Inverse of proof_tree for closed transitions: rebuild the transition from
/// the tree using the rules of `tss`. Throws Error on a tree that is not a
/// proof.
Transition from_proof(const Tss& tss, const ProofNode& p);

/// Partial map on process and transition variables.
struct TSubst {
  std::map<std::string, Term> procs;
  std::map<std::string, Transition> trans;
};

/// True iff every variable leaf bound by `s` is matched: same label, source
/// and target equal to the leaf's literal under the process part of `s`.
bool matches(const TSubst& s, const Transition& e);
/// E[s]. Throws TsubstError when `s` does not match `e` or the result is not
/// an open transition (one variable with two different literals).
Transition apply_tsubst(const Transition& e, const TSubst& s);

/// Variable leaves of `e` in left-to-right order (duplicates kept).
std::vector<Transition> leaves(const Transition& e);

}  // namespace epcalc
