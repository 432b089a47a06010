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
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "epcalc/syntax.hpp"
#include "epcalc/tss.hpp"

namespace epcalc {

/// Load a language from definition text. Alphabets given in `alphabets`
/// replace the ones declared in the file. Throws ParseError.
std::shared_ptr<const Tss> load_language(const std::string& text, const std::string& source_name,
                                         const std::optional<Alphabets>& alphabets = std::nullopt);

/// Load from a file path, or one of the built-in names "ccs" and "abcde".
std::shared_ptr<const Tss> load_language_file(const std::string& path_or_name,
                                              const std::optional<Alphabets>& alphabets = std::nullopt);

/// Shipped definition text of a built-in language; nullopt for other names.
std::optional<std::string> builtin_language_text(const std::string& name);

std::shared_ptr<const Tss> load_ccs(const std::set<std::string>& channels = {"a", "b", "c"});

/// Throws Error when the three alphabets are not pairwise disjoint.
std::shared_ptr<const Tss> load_abcde(const std::set<std::string>& channels = {"a", "c"},
                                      const std::set<std::string>& broadcasts = {"b"},
                                      const std::set<std::string>& signals = {"s"});

/// P = rec X { X = a.X + b.Y, Y = a.Y } and Q = rec Z { Z = a.Z } | b.0.
std::pair<Term, Term> ccs_example_pq();

}  // namespace epcalc
