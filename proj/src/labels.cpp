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

#include "epcalc/labels.hpp"

#include "epcalc/error.hpp"

namespace epcalc {

std::optional<char> broadcast_mode(const Label& l) {
  if (l.size() < 2) return std::nullopt;
  char c = l.back();
  if (c == '!' || c == '?' || c == ':') return c;
  return std::nullopt;
}

std::string label_base(const Label& l) {
  if (l == kTau) return {};
  if (broadcast_mode(l)) return l.substr(0, l.size() - 1);
  if (!l.empty() && l.front() == '\'') return l.substr(1);
  return l;
}

std::optional<Label> complement(const Label& l) {
  if (l.empty() || l == kTau || broadcast_mode(l)) return std::nullopt;
  if (l.front() == '\'') return l.substr(1);
  return "'" + l;
}

std::optional<char> broadcast_compose(char m1, char m2) {
  if (m1 == '!' && m2 == '!') return std::nullopt;
  if (m1 == '!' || m2 == '!') return '!';
  if (m1 == '?' || m2 == '?') return '?';
  return ':';
}

std::string apply_relabelling(const Relabelling& f, const std::string& name) {
  for (const auto& [from, to] : f)
    if (from == name) return to;
  return name;
}

Label relabel_label(const Relabelling& f, const Label& l) {
  if (l == kTau) return l;
  if (auto m = broadcast_mode(l)) return apply_relabelling(f, label_base(l)) + *m;
  if (l.front() == '\'') return "'" + apply_relabelling(f, l.substr(1));
  return apply_relabelling(f, l);
}

std::vector<std::string> known_label_classes() {
  return {"Ch", "'Ch", "tau", "B!", "B?", "B:", "Sig", "'Sig"};
}

std::optional<std::vector<Label>> label_class(const Alphabets& a,
                                              const std::string& name) {
  std::vector<Label> out;
  auto each = [&](const std::set<std::string>& s, const std::string& pre,
                  const std::string& post) {
    for (const auto& x : s) out.push_back(pre + x + post);
  };
  if (name == "Ch") each(a.channels, "", "");
  else if (name == "'Ch") each(a.channels, "'", "");
  else if (name == "tau") out.push_back(kTau);
  else if (name == "B!") each(a.broadcasts, "", "!");
  else if (name == "B?") each(a.broadcasts, "", "?");
  else if (name == "B:") each(a.broadcasts, "", ":");
  else if (name == "Sig") each(a.signals, "", "");
  else if (name == "'Sig") each(a.signals, "'", "");
  else return std::nullopt;
  return out;
}

LabelUniverse::LabelUniverse(const Alphabets& alphabets,
                             const std::vector<std::string>& action_classes,
                             const std::vector<std::string>& indicator_classes)
    : alphabets_(alphabets) {
  auto add = [&](const std::string& cls, LabelKind kind) {
    auto labels = label_class(alphabets, cls);
    if (!labels) throw UnknownName("unknown label class '" + cls + "'");
    for (const auto& l : *labels) {
      auto [it, fresh] = kinds_.emplace(l, kind);
      if (!fresh && it->second != kind)
        throw Error("label '" + l + "' declared both action and indicator");
    }
  };
  for (const auto& c : action_classes) add(c, LabelKind::Action);
  for (const auto& c : indicator_classes) add(c, LabelKind::Indicator);
}

bool LabelUniverse::is_action(const Label& l) const {
  auto it = kinds_.find(l);
  return it != kinds_.end() && it->second == LabelKind::Action;
}

bool LabelUniverse::is_indicator(const Label& l) const {
  auto it = kinds_.find(l);
  return it != kinds_.end() && it->second == LabelKind::Indicator;
}

std::vector<Label> LabelUniverse::actions() const {
  std::vector<Label> out;
  for (const auto& [l, k] : kinds_)
    if (k == LabelKind::Action) out.push_back(l);
  return out;
}

std::vector<Label> LabelUniverse::indicators() const {
  std::vector<Label> out;
  for (const auto& [l, k] : kinds_)
    if (k == LabelKind::Indicator) out.push_back(l);
  return out;
}

std::vector<Label> LabelUniverse::all() const {
  std::vector<Label> out;
  for (const auto& [l, k] : kinds_) out.push_back(l);
  return out;
}

}  // namespace epcalc
