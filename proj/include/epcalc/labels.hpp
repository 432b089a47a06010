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

// Transition labels are plain strings with a fixed spelling:
//   c      handshake name or signal read      'c   co-name or signal emission
//   tau    internal action
//   b!     broadcast     b?  receive     b:  discard

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace epcalc {

using Label = std::string;

inline constexpr const char* kTau = "tau";

enum class LabelKind { Action, Indicator };

/// Broadcast mode suffix ('!', '?', ':') if the label is a broadcast label.
std::optional<char> broadcast_mode(const Label& l);

/// Base name of a label: "a" for "a", "'a", "a!", ... ; empty for tau.
std::string label_base(const Label& l);

/// Complement on names and co-names; undefined on tau and broadcast labels.
std::optional<Label> complement(const Label& l);

/// Broadcast composition table; nullopt for the undefined cell ! with !.
std::optional<char> broadcast_compose(char m1, char m2);

/// A relabelling maps base names; it is the identity outside its domain.
using Relabelling = std::vector<std::pair<std::string, std::string>>;

std::string apply_relabelling(const Relabelling& f, const std::string& name);
Label relabel_label(const Relabelling& f, const Label& l);

/// The finite alphabets a language is parametrised with.
struct Alphabets {
  std::set<std::string> channels;
  std::set<std::string> broadcasts;
  std::set<std::string> signals;
};

/// Named label classes shared by language files: Ch, 'Ch, tau, B!, B?, B:,
/// Sig, 'Sig. Returns nullopt for an unknown class name.
std::optional<std::vector<Label>> label_class(const Alphabets& a,
                                              const std::string& name);

std::vector<std::string> known_label_classes();

/// Label universe of a language: every label with its kind.
class LabelUniverse {
public:
  LabelUniverse() = default;
  LabelUniverse(const Alphabets& alphabets,
                const std::vector<std::string>& action_classes,
                const std::vector<std::string>& indicator_classes);

  bool contains(const Label& l) const { return kinds_.count(l) != 0; }
  bool is_action(const Label& l) const;
  bool is_indicator(const Label& l) const;
  std::vector<Label> actions() const;
  std::vector<Label> indicators() const;
  std::vector<Label> all() const;
  const Alphabets& alphabets() const { return alphabets_; }

private:
  Alphabets alphabets_;
  std::map<Label, LabelKind> kinds_;
};

}  // namespace epcalc
