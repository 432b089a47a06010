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

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "epcalc/transition.hpp"
#include "epcalc/tss.hpp"

namespace epcalc {

struct DeriveOptions {
  int depth = 64;          // nested recursion unfoldings per query
  std::size_t horizon = 10000;  // reachable states for explore()
};

/// Goal-directed derivation of enabled transitions. Thread-safe; results
/// are memoized per term.
class Deriver {
public:
  explicit Deriver(std::shared_ptr<const Tss> tss, DeriveOptions opts = {});

  /// All proofs with source `p`, ordered by transition expression. Throws
  /// DepthBoundExceeded on unguarded recursion and Error for open `p`.
  const std::vector<Transition>& enabled(const Term& p) const;

  const Tss& tss() const { return *tss_; }
  std::shared_ptr<const Tss> tss_ptr() const { return tss_; }
  const DeriveOptions& options() const { return opts_; }

private:
  const std::vector<Transition>& enabled_at(const Term& p, int depth) const;

  std::shared_ptr<const Tss> tss_;
  DeriveOptions opts_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::size_t, std::vector<Transition>> memo_;
};

/// Reachable fragment of the associated LTS, states in BFS order.
struct Lts {
  std::vector<Term> states;
  std::unordered_map<std::size_t, std::size_t> index;   // term id -> state index
  std::vector<std::vector<Transition>> out;             // per state

  std::size_t state_of(const Term& p) const { return index.at(p.id()); }
  std::size_t transition_count() const;
};

/// Throws HorizonExceeded when more than opts.horizon states are reachable.
Lts explore(const Deriver& d, const Term& p);
/// Union of the fragments reachable from each root.
Lts explore(const Deriver& d, const std::vector<Term>& roots);

}  // namespace epcalc
