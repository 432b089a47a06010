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

#include "epcalc/languages.hpp"

#include <fstream>
#include <sstream>

#include "epcalc/error.hpp"
#include "langspec.hpp"

namespace epcalc {

namespace detail {
const char* builtin_ccs_text();
const char* builtin_abcde_text();
}  // namespace detail

namespace {

void check_disjoint(const Alphabets& al) {
  auto clash = [](const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& x : a)
      if (b.count(x)) return std::optional<std::string>(x);
    return std::optional<std::string>();
  };
  std::optional<std::string> x = clash(al.channels, al.broadcasts);
  if (!x) x = clash(al.channels, al.signals);
  if (!x) x = clash(al.broadcasts, al.signals);
  if (x) throw Error("alphabets overlap on '" + *x + "'");
}

}  // namespace

std::optional<std::string> builtin_language_text(const std::string& name) {
  if (name == "ccs") return std::string(detail::builtin_ccs_text());
  if (name == "abcde") return std::string(detail::builtin_abcde_text());
  return std::nullopt;
}

std::shared_ptr<const Tss> load_language(const std::string& text, const std::string& source_name,
                                         const std::optional<Alphabets>& alphabets) {
  auto spec = std::make_shared<detail::LangSpec>(detail::parse_lang(text, source_name));
  if (alphabets) spec->alphabets = *alphabets;
  check_disjoint(spec->alphabets);
  Alphabets al = spec->alphabets;
  return std::make_shared<const Tss>(std::move(spec), std::move(al));
}

std::shared_ptr<const Tss> load_language_file(const std::string& path_or_name,
                                              const std::optional<Alphabets>& alphabets) {
  if (auto text = builtin_language_text(path_or_name))
    return load_language(*text, path_or_name, alphabets);
  std::ifstream in(path_or_name);
  if (!in) throw Error("cannot read " + path_or_name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_language(ss.str(), path_or_name, alphabets);
}

std::shared_ptr<const Tss> load_ccs(const std::set<std::string>& channels) {
  Alphabets al;
  al.channels = channels;
  return load_language(detail::builtin_ccs_text(), "ccs", al);
}

std::shared_ptr<const Tss> load_abcde(const std::set<std::string>& channels,
                                      const std::set<std::string>& broadcasts,
                                      const std::set<std::string>& signals) {
  Alphabets al{channels, broadcasts, signals};
  return load_language(detail::builtin_abcde_text(), "abcde", al);
}

std::pair<Term, Term> ccs_example_pq() {
  Term p = parse_term("rec X { X = a.X + b.Y, Y = a.Y }");
  Term q = parse_term("rec Z { Z = a.Z } | b.0");
  return {p, q};
}

}  // namespace epcalc
