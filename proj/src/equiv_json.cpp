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

#include "epcalc/equivalence.hpp"
#include "epcalc/error.hpp"
#include "json.hpp"

namespace epcalc {

using nlohmann::json;

namespace {

json ref_json(const Refutation& r) {
  json j{{"p", r.p}, {"q", r.q}};
  if (!r.clause.empty()) j["clause"] = r.clause;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.truncated) j["truncated"] = true;
  if (!r.children.empty()) {
    j["children"] = json::array();
    for (const auto& c : r.children) j["children"].push_back(ref_json(c));
  }
  return j;
}

json witness_json(const EpWitness& w) {
  json arr = json::array();
  for (const auto& t : w.triples) {
    json R = json::array();
    for (const auto& [a, b] : t.R) R.push_back({a, b});
    arr.push_back({{"p", t.p}, {"q", t.q}, {"R", R}, {"next", t.next}});
  }
  return json{{"triples", arr}};
}

}  // namespace

std::string Refutation::str(int indent) const {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::string s = pad + "(" + p + ", " + q + ")";
  if (!clause.empty()) s += (clause == "R" ? " candidate" : " clause " + clause);
  if (!detail.empty()) s += ": " + detail;
  if (truncated) s += " ...";
  s += "\n";
  for (const auto& c : children) s += c.str(indent + 1);
  return s;
}

std::string Refutation::to_json() const { return ref_json(*this).dump(2); }

std::string StrongVerdict::to_json() const {
  json j{{"equivalent", equivalent}, {"rounds", rounds}};
  if (equivalent) {
    json rel = json::array();
    for (const auto& [a, b] : relation) rel.push_back({a, b});
    j["relation"] = rel;
  }
  if (evidence) j["evidence"] = ref_json(*evidence);
  return j.dump(2);
}

std::string EpWitness::to_json() const { return witness_json(*this).dump(2); }

EpWitness EpWitness::from_json(const std::string& text) {
  EpWitness w;
  try {
    json j = json::parse(text);
    const json& arr = j.contains("witness") ? j.at("witness").at("triples") : j.at("triples");
    for (const auto& t : arr) {
      EpTriple tr;
      tr.p = t.at("p").get<std::string>();
      tr.q = t.at("q").get<std::string>();
      for (const auto& pr : t.at("R")) tr.R.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
      tr.next = t.at("next").get<std::vector<std::size_t>>();
      w.triples.push_back(std::move(tr));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("bad witness document: ") + e.what());
  }
  return w;
}

std::string EpVerdict::to_json() const {
  json j{{"equivalent", equivalent}, {"pairs", pairs}, {"candidates", candidates}, {"rounds", rounds}};
  if (witness) j["witness"] = witness_json(*witness);
  if (refutation) j["refutation"] = ref_json(*refutation);
  return j.dump(2);
}

}  // namespace epcalc
