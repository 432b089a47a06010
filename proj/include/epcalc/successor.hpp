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
#include <vector>

#include "epcalc/derivation.hpp"
#include "epcalc/successor_rules.hpp"
#include "epcalc/transition.hpp"
#include "epcalc/tss.hpp"

namespace epcalc {

/// Successor rules of the language, for-clauses expanded and label
/// conditions evaluated.
std::vector<SuccRule> compile_succ_rules(const Tss& tss);
std::vector<MetaRule> compile_meta_rules(const Tss& tss);

/// Meta rule instances for one operator instance: one rule per pair of rule
/// names (r, s) of that operator where s can derive a label allowed by the
/// meta rule.
std::vector<SuccRule> expand_meta(const Tss& tss, const MetaRule& m, const Operator& op);

struct Rule1Expansion {
  std::vector<SuccRule> rules;   // over one representative per operator kind
  std::map<std::string, int> count_by_type;   // type symbol -> rules, rec included
  int total = 0;
};

/// Expansion of every meta rule over one representative instance per
/// operator kind (the first declared action for prefixes, the first signal
/// for signalling); recursion counts its recAct/recIn pairs.
Rule1Expansion expand_rule1(const Tss& tss);

/// De Simone format check for the successor rules, meta rules expanded.
std::vector<Diagnostic> check_de_simone_succ(const Tss& tss);

/// Goal-directed derivation of t ~[u]~> v. Thread-safe, memoized.
class SuccessorEngine {
public:
  explicit SuccessorEngine(std::shared_ptr<const Deriver> deriver);
  explicit SuccessorEngine(std::shared_ptr<const Tss> tss, DeriveOptions opts = {});

  /// All v with t ~[u]~> v, sorted by name. Throws SourceMismatch when
  /// t and u have different sources.
  const std::vector<Transition>& successors(const Transition& t, const Transition& u) const;

  const Deriver& deriver() const { return *deriver_; }
  std::shared_ptr<const Deriver> deriver_ptr() const { return deriver_; }
  const Tss& tss() const { return deriver_->tss(); }
  const std::vector<SuccRule>& rules() const { return rules_; }

private:
  struct Key {
    std::size_t t, u;
    friend bool operator<(const Key& a, const Key& b) {
      return a.t != b.t ? a.t < b.t : a.u < b.u;
    }
  };
  const std::vector<SuccRule>& meta_rules_for(const Operator& op) const;
  void apply(const SuccRule& r, const Transition& t, const Transition& u,
             std::vector<Transition>& out) const;

  std::shared_ptr<const Deriver> deriver_;
  std::vector<SuccRule> rules_;
  std::vector<MetaRule> meta_;
  std::map<std::pair<std::string, std::string>, std::vector<const SuccRule*>> index_;
  mutable std::mutex mu_;
  mutable std::map<Key, std::vector<Transition>> memo_;
  mutable std::map<std::string, std::unique_ptr<std::vector<SuccRule>>> meta_cache_;
};

struct SuccTriple {
  std::size_t state;   // index into the explored Lts
  Transition t, u, v;
};

/// Every triple t ~[u]~> v with source(t) reachable from `p`.
struct SuccRelation {
  Lts lts;
  std::vector<SuccTriple> triples;
};
SuccRelation successor_relation(const SuccessorEngine& e, const Term& p);
SuccRelation successor_relation(const SuccessorEngine& e, const std::vector<Term>& roots);

}  // namespace epcalc
