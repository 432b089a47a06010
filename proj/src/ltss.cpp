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
#include <deque>

#include "epcalc/equivalence.hpp"
#include "epcalc/error.hpp"
#include "json.hpp"

namespace epcalc {

using nlohmann::json;

std::size_t ExplicitLtss::add_state(const std::string& name) {
  auto it = state_index_.find(name);
  if (it != state_index_.end()) return it->second;
  state_index_.emplace(name, states_.size());
  states_.push_back(name);
  out_.emplace_back();
  return states_.size() - 1;
}

std::size_t ExplicitLtss::add_transition(const std::string& id, std::size_t src, const Label& label,
                                         std::size_t tgt) {
  if (src >= states_.size() || tgt >= states_.size())
    throw MalformedLtss("transition " + id + " refers to an unknown state");
  if (tr_index_.count(id)) throw MalformedLtss("duplicate transition id " + id);
  if (!actions.empty() && std::find(actions.begin(), actions.end(), label) == actions.end())
    throw MalformedLtss("transition " + id + " has undeclared label " + label);
  tr_index_.emplace(id, trs_.size());
  trs_.push_back({id, src, tgt, label});
  out_[src].push_back(trs_.size() - 1);
  return trs_.size() - 1;
}

void ExplicitLtss::add_successor(std::size_t t, std::size_t u, std::size_t v) {
  if (t >= trs_.size() || u >= trs_.size() || v >= trs_.size())
    throw MalformedLtss("successor triple refers to an unknown transition");
  if (trs_[t].src != trs_[u].src)
    throw MalformedLtss("successor " + trs_[t].id + " ~[" + trs_[u].id + "]~> " + trs_[v].id +
                        ": source(t) != source(u)");
  if (trs_[v].src != trs_[u].tgt)
    throw MalformedLtss("successor " + trs_[t].id + " ~[" + trs_[u].id + "]~> " + trs_[v].id +
                        ": source(v) != target(u)");
  auto& vs = succ_[{t, u}];
  auto pos = std::lower_bound(vs.begin(), vs.end(), v);
  if (pos == vs.end() || *pos != v) vs.insert(pos, v);
}

const std::vector<std::size_t>& ExplicitLtss::successors(std::size_t t, std::size_t u) const {
  static const std::vector<std::size_t> none;
  auto it = succ_.find({t, u});
  return it == succ_.end() ? none : it->second;
}

std::size_t ExplicitLtss::successor_count() const {
  std::size_t n = 0;
  for (const auto& [k, vs] : succ_) n += vs.size();
  return n;
}

std::optional<std::size_t> ExplicitLtss::find_state(const std::string& name) const {
  auto it = state_index_.find(name);
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ExplicitLtss::find_transition(const std::string& id) const {
  auto it = tr_index_.find(id);
  if (it == tr_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> ExplicitLtss::reachable(std::size_t s) const {
  std::vector<bool> seen(states_.size(), false);
  std::vector<std::size_t> order{s};
  seen[s] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t t : out_[order[i]]) {
      std::size_t n = trs_[t].tgt;
      if (!seen[n]) {
        seen[n] = true;
        order.push_back(n);
      }
    }
  return order;
}

ExplicitLtss ExplicitLtss::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedLtss(std::string("invalid JSON: ") + e.what());
  }
  ExplicitLtss l;
  try {
    if (j.contains("actions"))
      for (const auto& a : j.at("actions")) l.actions.push_back(a.get<std::string>());
    for (const auto& s : j.at("states")) {
      std::string name = s.is_string() ? s.get<std::string>() : s.dump();
      if (l.find_state(name)) throw MalformedLtss("duplicate state " + name);
      l.add_state(name);
    }
    auto state = [&](const json& v) {
      std::string name = v.is_string() ? v.get<std::string>() : v.dump();
      auto s = l.find_state(name);
      if (!s) throw MalformedLtss("unknown state " + name);
      return *s;
    };
    for (const auto& t : j.value("transitions", json::array())) {
      std::string id = t.at("id").is_string() ? t.at("id").get<std::string>() : t.at("id").dump();
      l.add_transition(id, state(t.at("src")), t.at("label").get<std::string>(), state(t.at("tgt")));
    }
    auto tr = [&](const json& v) {
      std::string id = v.is_string() ? v.get<std::string>() : v.dump();
      auto t = l.find_transition(id);
      if (!t) throw MalformedLtss("unknown transition " + id);
      return *t;
    };
    for (const auto& s : j.value("successors", json::array())) {
      if (!s.is_array() || s.size() != 3) throw MalformedLtss("successor entries are [t, u, v]");
      l.add_successor(tr(s[0]), tr(s[1]), tr(s[2]));
    }
  } catch (const json::exception& e) {
    throw MalformedLtss(std::string("bad LTSS document: ") + e.what());
  }
  return l;
}

std::string ExplicitLtss::to_json() const {
  json j;
  j["states"] = states_;
  j["transitions"] = json::array();
  for (const auto& t : trs_)
    j["transitions"].push_back({{"id", t.id}, {"src", states_[t.src]}, {"label", t.label},
                                {"tgt", states_[t.tgt]}});
  j["successors"] = json::array();
  for (const auto& [k, vs] : succ_)
    for (std::size_t v : vs) j["successors"].push_back({trs_[k.first].id, trs_[k.second].id, trs_[v].id});
  j["actions"] = actions;
  return j.dump(2);
}

namespace {

ExplicitLtss from_lts(const Lts& lts) {
  ExplicitLtss l;
  for (const auto& s : lts.states) l.add_state(s.str());
  for (std::size_t s = 0; s < lts.states.size(); ++s)
    for (const auto& t : lts.out[s]) l.add_transition(t.str(), s, t.label(), lts.state_of(t.target()));
  return l;
}

}  // namespace

ExplicitLtss to_explicit(const Lts& lts) { return from_lts(lts); }

ExplicitLtss to_explicit(const SuccRelation& rel) {
  ExplicitLtss l = from_lts(rel.lts);
  for (const auto& tr : rel.triples)
    l.add_successor(*l.find_transition(tr.t.str()), *l.find_transition(tr.u.str()),
                    *l.find_transition(tr.v.str()));
  return l;
}

}  // namespace epcalc
