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
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "epcalc/labels.hpp"
#include "epcalc/syntax.hpp"

namespace epcalc {

namespace detail {
struct LangSpec;
}

/// A format violation. `code` is stable (T.. for transition rules, S.. for
/// successor rules) and is what the test corpus asserts on.
struct Diagnostic {
  std::string code;
  std::string rule;
  std::string clause;
  std::string detail;
  int line = 0;

  std::string str() const;
};

struct RuleName {
  std::string family;
  std::vector<std::string> params;

  /// "plusL", "act_a", "restr_{a,b}", "disAlpha_{b,a}".
  std::string str() const;

  friend bool operator==(const RuleName&, const RuleName&) = default;
  friend auto operator<=>(const RuleName&, const RuleName&) = default;
};

inline constexpr const char* kRecAct = "recAct";
inline constexpr const char* kRecIn = "recIn";

/// A concrete transition rule
///   { x_i -a_i-> y_i | i in I }  /  Op(x_1..x_n) -a-> target
/// Positions are 0-based.
struct Rule {
  RuleName name;
  Operator op;
  std::vector<std::string> x;
  std::vector<std::optional<std::string>> y;
  std::vector<std::optional<Label>> trigger;
  Label label;
  Term target;
  int line = 0;

  int arity() const { return static_cast<int>(x.size()); }
  bool triggered(int i) const { return trigger[static_cast<std::size_t>(i)].has_value(); }
  std::vector<int> trigger_set() const;
  std::string str() const;
};

/// Arity, operator kind and trigger set shared by all rules of one family.
struct FamilyInfo {
  OpKind kind = OpKind::Nil;
  std::string custom;  // custom operator symbol
  int arity = 0;
  std::vector<int> trigger_set;
  int line = 0;
};

/// A transition system specification: operator signature, label kinds and
/// rule templates, instantiated on demand per operator instance.
class Tss {
public:
  Tss(std::shared_ptr<const detail::LangSpec> spec, Alphabets alphabets);

  const std::string& language() const;
  const Alphabets& alphabets() const { return labels_.alphabets(); }
  const LabelUniverse& labels() const { return labels_; }
  TermSignature signature() const;
  bool allows(OpKind k) const;

  /// Parse a process term against this language's signature and labels.
  Term parse(const std::string& text) const;

  /// All rules whose conclusion source has operator `op`; cached, sorted by
  /// name then trigger.
  const std::vector<Rule>& rules_for(const Operator& op) const;

  /// Finite set of operator instances that exercise every template: all
  /// prefixes, all signals, restrictions, a few relabellings, custom ops.
  std::vector<Operator> representative_ops() const;

  /// Every rule instance over representative_ops().
  std::vector<const Rule*> all_rules() const;

  /// Rules of representative instances whose rendered name or family is
  /// `name`. Throws UnknownName when there is none.
  std::vector<const Rule*> rules_named(const std::string& name) const;

  const std::map<std::string, FamilyInfo>& families() const { return families_; }
  const FamilyInfo* family(const std::string& name) const;

  /// Find the rule named `name` (family and parameters) for `op` whose
  /// trigger labels are `labels` (nullopt at untriggered positions).
  const Rule* find_rule(const RuleName& name, const Operator& op,
                        const std::vector<std::optional<Label>>& labels) const;
  /// Same, matching the family only.
  std::vector<const Rule*> find_by_family(const std::string& family, const Operator& op,
                                          const std::vector<std::optional<Label>>& labels) const;

  /// De Simone format check for the transition rules.
  std::vector<Diagnostic> check_de_simone() const;

  const detail::LangSpec& spec() const { return *spec_; }
  std::shared_ptr<const detail::LangSpec> spec_ptr() const { return spec_; }

private:
  std::shared_ptr<const detail::LangSpec> spec_;
  LabelUniverse labels_;
  std::map<std::string, FamilyInfo> families_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::unique_ptr<std::vector<Rule>>> cache_;
};

}  // namespace epcalc
