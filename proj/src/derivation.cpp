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

#include "epcalc/derivation.hpp"

#include <algorithm>
#include <deque>

#include "epcalc/error.hpp"

namespace epcalc {

Deriver::Deriver(std::shared_ptr<const Tss> tss, DeriveOptions opts)
    : tss_(std::move(tss)), opts_(opts) {}

const std::vector<Transition>& Deriver::enabled(const Term& p) const {
  if (!p.is_closed()) throw Error("cannot derive transitions of the open term " + p.str());
  return enabled_at(p, 0);
}

const std::vector<Transition>& Deriver::enabled_at(const Term& p, int depth) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(p.id());
    if (it != memo_.end()) return it->second;
  }
  std::vector<Transition> out;
  if (p.is_rec()) {
    if (depth >= opts_.depth)
      throw DepthBoundExceeded("more than " + std::to_string(opts_.depth) +
                               " nested unfoldings of " + p.str() +
                               " (unguarded recursion?)");
    for (const auto& t : enabled_at(unfold(p), depth + 1)) {
      auto kind = tss_->labels().is_indicator(t.label()) ? Transition::Kind::RecIn
                                                         : Transition::Kind::RecAct;
      out.push_back(Transition::rec(kind, p, t));
    }
  } else if (p.is_op()) {
    const auto& rules = tss_->rules_for(p.oper());
    const std::size_t n = p.args().size();
    std::vector<const std::vector<Transition>*> en(n, nullptr);
    for (const Rule& r : rules)
      for (std::size_t i = 0; i < n; ++i)
        if (r.triggered(static_cast<int>(i)) && !en[i]) en[i] = &enabled_at(p.args()[i], depth);
    for (const Rule& r : rules) {
      std::vector<std::vector<Transition::Arg>> choices(n);
      bool empty = false;
      for (std::size_t i = 0; i < n && !empty; ++i) {
        if (!r.triggered(static_cast<int>(i))) {
          choices[i].emplace_back(p.args()[i]);
          continue;
        }
        for (const auto& t : *en[i])
          if (t.label() == *r.trigger[i]) choices[i].emplace_back(t);
        empty = choices[i].empty();
      }
      if (empty) continue;
      std::vector<std::size_t> pick(n, 0);
      for (;;) {
        std::vector<Transition::Arg> args;
        for (std::size_t i = 0; i < n; ++i) args.push_back(choices[i][pick[i]]);
        out.push_back(Transition::ctor(r, std::move(args)));
        std::size_t i = 0;
        while (i < n && ++pick[i] == choices[i].size()) pick[i++] = 0;
        if (i == n) break;
      }
    }
  } else {
    throw Error("cannot derive transitions of the variable " + p.var_name());
  }
  std::sort(out.begin(), out.end(),
            [](const Transition& a, const Transition& b) { return a.str() < b.str(); });
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(p.id(), std::move(out)).first->second;
}

std::size_t Lts::transition_count() const {
  std::size_t n = 0;
  for (const auto& o : out) n += o.size();
  return n;
}

Lts explore(const Deriver& d, const std::vector<Term>& roots) {
  Lts lts;
  std::deque<std::size_t> queue;
  auto add = [&](const Term& p) {
    auto [it, fresh] = lts.index.emplace(p.id(), lts.states.size());
    if (fresh) {
      if (lts.states.size() >= d.options().horizon)
        throw HorizonExceeded("more than " + std::to_string(d.options().horizon) +
                              " reachable states");
      lts.states.push_back(p);
      lts.out.emplace_back();
      queue.push_back(it->second);
    }
  };
  for (const auto& r : roots) add(r);
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    const auto& en = d.enabled(lts.states[s]);
    lts.out[s] = en;
    for (const auto& t : en) add(t.target());
  }
  return lts;
}

Lts explore(const Deriver& d, const Term& p) { return explore(d, std::vector<Term>{p}); }

}  // namespace epcalc
