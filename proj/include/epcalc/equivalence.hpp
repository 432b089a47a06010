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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epcalc/derivation.hpp"
#include "epcalc/successor.hpp"

namespace epcalc {

/// A finite LTSS with named states and transitions.
class ExplicitLtss {
public:
  struct Tr {
    std::string id;
    std::size_t src = 0, tgt = 0;
    Label label;
  };

  std::size_t add_state(const std::string& name);
  std::size_t add_transition(const std::string& id, std::size_t src, const Label& label,
                             std::size_t tgt);
  /// Throws MalformedLtss unless source(t) = source(u) and source(v) = target(u).
  void add_successor(std::size_t t, std::size_t u, std::size_t v);

  std::size_t state_count() const { return states_.size(); }
  std::size_t transition_count() const { return trs_.size(); }
  const std::string& state_name(std::size_t s) const { return states_[s]; }
  const Tr& transition(std::size_t t) const { return trs_[t]; }
  const std::vector<std::size_t>& enabled(std::size_t s) const { return out_[s]; }
  /// All v with t ~[u]~> v, ascending.
  const std::vector<std::size_t>& successors(std::size_t t, std::size_t u) const;
  std::size_t successor_count() const;
  std::optional<std::size_t> find_state(const std::string& name) const;
  std::optional<std::size_t> find_transition(const std::string& id) const;
  std::vector<std::size_t> reachable(std::size_t s) const;

  std::vector<Label> actions;   // declared labels; empty means unrestricted

  /// {states, transitions:[{id,src,label,tgt}], successors:[[t,u,v]], actions}
  static ExplicitLtss from_json(const std::string& text);
  std::string to_json() const;

private:
  std::vector<std::string> states_;
  std::map<std::string, std::size_t> state_index_;
  std::vector<Tr> trs_;
  std::map<std::string, std::size_t> tr_index_;
  std::vector<std::vector<std::size_t>> out_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> succ_;
};

/// The reachable fragment of the associated LTS, no successors.
ExplicitLtss to_explicit(const Lts& lts);
/// The reachable fragment with its successor relation.
ExplicitLtss to_explicit(const SuccRelation& rel);

struct EquivOptions {
  std::size_t horizon = 10000;         // reachable states
  int depth = 64;                      // recursion unfoldings
  std::size_t enabled_cap = 8;         // |en(p)| per state in the ep check
  std::size_t candidate_cap = 65536;   // candidate relations R per state pair
  std::size_t triple_cap = 1000000;    // total candidate triples
  int evidence_depth = 6;              // depth of rendered refutations
};

/// A node of distinguishing evidence. Pair nodes carry the states, and one
/// child per defender option; leaves name the violated clause.
struct Refutation {
  std::string p, q;
  std::string clause;   // "1a" "1b" "1c" "2a" "2b", "R" for a candidate, "" for a pair
  std::string detail;
  bool truncated = false;
  std::vector<Refutation> children;

  std::string str(int indent = 0) const;
  std::string to_json() const;
};

struct StrongVerdict {
  bool equivalent = false;
  std::vector<std::pair<std::string, std::string>> relation;   // bisimulation on reachable pairs
  std::optional<Refutation> evidence;
  std::size_t rounds = 0;

  std::string to_json() const;
};

struct EpTriple {
  std::string p, q;
  std::vector<std::pair<std::string, std::string>> R;   // transition ids
  std::vector<std::size_t> next;   // per pair of R, index of the chosen target triple
};

/// An ep-bisimulation containing triples[0], whose root is the queried pair.
struct EpWitness {
  std::vector<EpTriple> triples;

  std::string to_json() const;
  static EpWitness from_json(const std::string& text);
};

struct EpVerdict {
  bool equivalent = false;
  std::optional<EpWitness> witness;
  std::optional<Refutation> refutation;
  std::size_t pairs = 0, candidates = 0, rounds = 0;

  std::string to_json() const;
};

StrongVerdict strong_bisim(const ExplicitLtss& l, std::size_t p, std::size_t q,
                           const EquivOptions& opts = {});
StrongVerdict strong_bisim(const Tss& tss, const Term& p, const Term& q, const EquivOptions& opts = {});

/// Throws CapExceeded when an enabled set or a candidate universe is over its cap.
EpVerdict ep_bisim_on_lts(const ExplicitLtss& l, std::size_t p, std::size_t q,
                          const EquivOptions& opts = {});
EpVerdict ep_bisim(const SuccessorEngine& e, const Term& p, const Term& q,
                   const EquivOptions& opts = {});
EpVerdict ep_bisim(std::shared_ptr<const Tss> tss, const Term& p, const Term& q,
                   const EquivOptions& opts = {});

/// Re-checks clauses 1a-2b; `why` receives the first failure.
bool verify_witness(const ExplicitLtss& l, const EpWitness& w, std::string* why = nullptr);
/// Rebuilds the LTSS reachable from the witness root with a fresh engine.
bool verify_witness(std::shared_ptr<const Tss> tss, const EpWitness& w, std::string* why = nullptr,
                    const EquivOptions& opts = {});

}  // namespace epcalc
