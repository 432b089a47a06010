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

// epcalc: LTS, successor relation, format checks and equivalence checks for
// De Simone languages with successors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "epcalc/equivalence.hpp"
#include "epcalc/error.hpp"
#include "epcalc/languages.hpp"
#include "json.hpp"

namespace {

using namespace epcalc;
using nlohmann::json;
namespace fs = std::filesystem;

struct Flags {
  std::string lang = "ccs";
  std::string channels, broadcasts, signals;
  std::size_t horizon = 10000;
  int depth = 64;
  std::size_t encap = 8;
  std::string format = "text";
  bool witness = false;
  bool explain = false;
  unsigned long seed = 0;
  std::string ltss;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resolve_lang(const std::string& name) {
  if (builtin_language_text(name) || fs::exists(name)) return name;
  if (const char* env = std::getenv("EPCALC_LANG_PATH")) {
    std::stringstream dirs(env);
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
      if (dir.empty()) continue;
      for (const auto& cand : {fs::path(dir) / name, fs::path(dir) / (name + ".lang")})
        if (fs::exists(cand)) return cand.string();
    }
  }
  return name;
}

std::set<std::string> split(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

std::shared_ptr<const Tss> language(const Flags& f) {
  std::string path = resolve_lang(f.lang);
  auto tss = load_language_file(path);
  if (f.channels.empty() && f.broadcasts.empty() && f.signals.empty()) return tss;
  Alphabets a = tss->alphabets();
  if (!f.channels.empty()) a.channels = split(f.channels);
  if (!f.broadcasts.empty()) a.broadcasts = split(f.broadcasts);
  if (!f.signals.empty()) a.signals = split(f.signals);
  return load_language_file(path, a);
}

EquivOptions equiv_options(const Flags& f) {
  EquivOptions o;
  o.horizon = f.horizon;
  o.depth = f.depth;
  o.enabled_cap = f.encap;
  return o;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

int cmd_lts(const Flags& f, const std::string& term) {
  auto tss = language(f);
  Deriver d(tss, DeriveOptions{f.depth, f.horizon});
  Lts lts = explore(d, tss->parse(term));
  if (f.format == "json") {
    std::cout << to_explicit(lts).to_json() << "\n";
  } else if (f.format == "dot") {
    std::cout << "digraph lts {\n";
    for (std::size_t s = 0; s < lts.states.size(); ++s)
      std::cout << "  s" << s << " [label=\"" << dot_escape(lts.states[s].str()) << "\"];\n";
    for (std::size_t s = 0; s < lts.states.size(); ++s)
      for (const auto& t : lts.out[s])
        std::cout << "  s" << s << " -> s" << lts.state_of(t.target()) << " [label=\""
                  << dot_escape(t.label()) << "\", tooltip=\"" << dot_escape(t.str()) << "\"];\n";
    std::cout << "}\n";
  } else {
    std::cout << lts.states.size() << " states, " << lts.transition_count() << " transitions\n";
    for (std::size_t s = 0; s < lts.states.size(); ++s) {
      std::cout << "[" << s << "] " << lts.states[s].str() << "\n";
      for (const auto& t : lts.out[s])
        std::cout << "  " << t.str() << " : " << t.label() << " -> [" << lts.state_of(t.target()) << "]\n";
    }
  }
  return 0;
}

int cmd_succ(const Flags& f, const std::string& term) {
  auto tss = language(f);
  SuccessorEngine e(tss, DeriveOptions{f.depth, f.horizon});
  SuccRelation rel = successor_relation(e, tss->parse(term));
  if (f.format == "json") {
    for (const auto& tr : rel.triples)
      std::cout << json{{"state", rel.lts.states[tr.state].str()},
                        {"t", tr.t.str()},
                        {"u", tr.u.str()},
                        {"v", tr.v.str()}}
                       .dump()
                << "\n";
  } else if (f.format == "dot") {
    std::cout << "digraph succ {\n";
    for (const auto& tr : rel.triples)
      std::cout << "  \"" << dot_escape(tr.t.str()) << "\" -> \"" << dot_escape(tr.v.str())
                << "\" [label=\"" << dot_escape(tr.u.str()) << "\"];\n";
    std::cout << "}\n";
  } else {
    std::cout << rel.triples.size() << " successor triples over " << rel.lts.states.size() << " states\n";
    for (const auto& tr : rel.triples)
      std::cout << tr.t.str() << " ~[" << tr.u.str() << "]~> " << tr.v.str() << "\n";
  }
  return 0;
}

int cmd_check_format(const Flags& f, const std::string& file) {
  std::string path = resolve_lang(file.empty() ? f.lang : file);
  auto tss = load_language_file(path);
  auto ds = tss->check_de_simone();
  auto more = check_de_simone_succ(*tss);
  ds.insert(ds.end(), more.begin(), more.end());
  if (f.format == "json") {
    json arr = json::array();
    for (const auto& d : ds)
      arr.push_back({{"code", d.code}, {"rule", d.rule}, {"line", d.line}, {"clause", d.clause},
                     {"detail", d.detail}});
    std::cout << json{{"file", path}, {"diagnostics", arr}}.dump(2) << "\n";
  } else {
    for (const auto& d : ds) std::cout << d.str() << "\n";
    std::cout << path << ": " << ds.size() << (ds.size() == 1 ? " diagnostic\n" : " diagnostics\n");
  }
  return ds.empty() ? 0 : 1;
}

// Loads the raw LTSS of --ltss and looks up the two named states.
std::pair<std::size_t, std::size_t> raw_states(const ExplicitLtss& l, const std::string& a,
                                               const std::string& b) {
  auto p = l.find_state(a), q = l.find_state(b);
  if (!p) throw Error("unknown state " + a);
  if (!q) throw Error("unknown state " + b);
  return {*p, *q};
}

int cmd_strong(const Flags& f, const std::string& a, const std::string& b) {
  StrongVerdict v;
  if (!f.ltss.empty()) {
    auto l = ExplicitLtss::from_json(read_file(f.ltss));
    auto [p, q] = raw_states(l, a, b);
    v = strong_bisim(l, p, q, equiv_options(f));
  } else {
    auto tss = language(f);
    v = strong_bisim(*tss, tss->parse(a), tss->parse(b), equiv_options(f));
  }
  if (f.format == "json") {
    std::cout << v.to_json() << "\n";
  } else {
    std::cout << (v.equivalent ? "strongly bisimilar\n" : "not strongly bisimilar\n");
    if (f.witness && v.equivalent)
      for (const auto& [x, y] : v.relation) std::cout << "  " << x << "  ~  " << y << "\n";
    if (f.explain && v.evidence) std::cout << v.evidence->str();
  }
  return v.equivalent ? 0 : 1;
}

int cmd_ep(const Flags& f, const std::string& a, const std::string& b) {
  EpVerdict v;
  if (!f.ltss.empty()) {
    auto l = ExplicitLtss::from_json(read_file(f.ltss));
    auto [p, q] = raw_states(l, a, b);
    v = ep_bisim_on_lts(l, p, q, equiv_options(f));
  } else {
    auto tss = language(f);
    v = ep_bisim(tss, tss->parse(a), tss->parse(b), equiv_options(f));
  }
  if (f.format == "json") {
    if (!f.witness) v.witness.reset();
    if (!f.explain) v.refutation.reset();
    std::cout << v.to_json() << "\n";
  } else if (f.witness && v.witness) {
    std::cout << v.witness->to_json() << "\n";
  } else {
    std::cout << (v.equivalent ? "ep-bisimilar\n" : "not ep-bisimilar\n");
    if (f.explain && v.refutation) std::cout << v.refutation->str();
  }
  return v.equivalent ? 0 : 1;
}

int cmd_witness_verify(const Flags& f, const std::string& file) {
  EpWitness w = EpWitness::from_json(read_file(file));
  std::string why;
  bool ok;
  if (!f.ltss.empty()) {
    ok = verify_witness(ExplicitLtss::from_json(read_file(f.ltss)), w, &why);
  } else {
    ok = verify_witness(language(f), w, &why, equiv_options(f));
  }
  if (f.format == "json") {
    json j{{"valid", ok}};
    if (!ok) j["reason"] = why;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (ok ? "valid ep-bisimulation\n" : "invalid: " + why + "\n");
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epcalc: structural operational semantics with successors"};
  app.require_subcommand(1);
  Flags f;
  auto common = [&](CLI::App* c) {
    c->add_option("--lang", f.lang, "built-in language (ccs, abcde) or language file");
    c->add_option("--channels", f.channels, "comma-separated channel names");
    c->add_option("--broadcasts", f.broadcasts, "comma-separated broadcast names");
    c->add_option("--signals", f.signals, "comma-separated signal names");
    c->add_option("--horizon", f.horizon, "maximum number of reachable states")->check(CLI::PositiveNumber);
    c->add_option("--depth", f.depth, "maximum nested recursion unfoldings")->check(CLI::PositiveNumber);
    c->add_option("--encap", f.encap, "maximum enabled transitions per state")->check(CLI::Range(1, 30));
    c->add_option("--format", f.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
    c->add_option("--seed", f.seed, "seed for randomized commands");
  };
  std::string t1, t2, file;

  auto* lts = app.add_subcommand("lts", "reachable LTS of a term");
  common(lts);
  lts->add_option("term", t1)->required();
  auto* succ = app.add_subcommand("succ", "successor relation over the reachable states of a term");
  common(succ);
  succ->add_option("term", t1)->required();
  auto* chk = app.add_subcommand("check-format", "De Simone format checks of a language file");
  common(chk);
  chk->add_option("file", file, "language file (defaults to --lang)");
  auto* ep = app.add_subcommand("epbisim", "decide ep-bisimilarity");
  auto* sb = app.add_subcommand("strongbisim", "decide strong bisimilarity");
  for (auto* c : {ep, sb}) {
    common(c);
    c->add_option("p", t1)->required();
    c->add_option("q", t2)->required();
    c->add_option("--ltss", f.ltss, "decide on a raw LTSS file; p and q name states");
    c->add_flag("--witness", f.witness, "print the witness");
    c->add_flag("--explain", f.explain, "print distinguishing evidence");
  }
  auto* wv = app.add_subcommand("witness-verify", "check an ep-bisimulation witness");
  common(wv);
  wv->add_option("witness", file)->required();
  wv->add_option("--ltss", f.ltss, "check against a raw LTSS file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (lts->parsed()) return cmd_lts(f, t1);
    if (succ->parsed()) return cmd_succ(f, t1);
    if (chk->parsed()) return cmd_check_format(f, file);
    if (ep->parsed()) return cmd_ep(f, t1, t2);
    if (sb->parsed()) return cmd_strong(f, t1, t2);
    if (wv->parsed()) return cmd_witness_verify(f, file);
  } catch (const std::exception& e) {
    std::cerr << "epcalc: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
