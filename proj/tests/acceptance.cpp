// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
// exits non-zero when any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "epcalc/equivalence.hpp"
#include "epcalc/error.hpp"
#include "epcalc/languages.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace epcalc;
using namespace epcalc::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool mentions(const Refutation& r, const std::string& clause) {
  if (r.clause == clause) return true;
  for (const auto& c : r.children)
    if (mentions(c, clause)) return true;
  return false;
}

const Transition* named(const std::vector<Transition>& ts, const std::string& name) {
  for (const auto& t : ts)
    if (t.str() == name) return &t;
  return nullptr;
}

Outcome c1() {
  auto ccs = load_ccs();
  auto [p, q] = ccs_example_pq();
  bool strong = strong_bisim(*ccs, p, q).equivalent;
  auto ep = ep_bisim(ccs, p, q);
  bool cites = ep.refutation && mentions(*ep.refutation, "2b");
  return {strong && !ep.equivalent && cites,
          std::string("strong=") + (strong ? "yes" : "no") + " ep=" + (ep.equivalent ? "yes" : "no") +
              " refutation cites 2b=" + (cites ? "yes" : "no")};
}

Outcome c2() {
  auto ccs = load_ccs();
  SuccessorEngine e(ccs);
  auto [p, q] = ccs_example_pq();
  const auto& en = e.deriver().enabled(q);
  const Transition* u = named(en, "(rec Z { Z = a.Z }) parR (act_b 0)");
  const Transition* t1 = named(en, "recAct(Z,{Z = a.Z},act_a (rec Z { Z = a.Z })) parL (b.0)");
  if (!u || !t1) return {false, "u or t1 not enabled at Q"};
  const auto& s = e.successors(*u, *t1);
  bool derived = std::find(s.begin(), s.end(), *u) != s.end();
  std::size_t at_p = 0;
  auto rel = successor_relation(e, p);
  at_p = rel.triples.size();
  return {derived && at_p == 0, std::string("u ~[t1]~> u ") + (derived ? "derived" : "missing") +
                                    "; triples reachable from P: " + std::to_string(at_p)};
}

Outcome c3() {
  auto ccs = load_ccs();
  Deriver d(ccs);
  const auto& en = d.enabled(ccs->parse("rec X { X = a.X + c.X } | rec Y { Y = a.Y }"));
  std::set<std::string> names;
  std::map<std::tuple<std::size_t, Label, std::size_t>, int> literals;
  for (const auto& t : en) {
    names.insert(t.str());
    ++literals[{t.source().id(), t.label(), t.target().id()}];
  }
  bool shared = false;
  for (const auto& [k, n] : literals) shared = shared || (n == 2 && std::get<1>(k) == "a");
  return {en.size() == 3 && names.size() == 3 && shared,
          std::to_string(en.size()) + " transitions, " + std::to_string(names.size()) +
              " names, two a-transitions share their literal: " + (shared ? "yes" : "no")};
}

Outcome c4() {
  std::size_t diags = 0;
  for (const auto& tss : {load_ccs(), load_abcde()})
    diags += tss->check_de_simone().size() + check_de_simone_succ(*tss).size();
  auto ex = expand_rule1(*load_abcde());
  return {diags == 0 && ex.total == 26,
          std::to_string(diags) + " diagnostics; Rule 1 expands to " + std::to_string(ex.total) + " rules"};
}

Outcome c5() {
  std::size_t files = 0, hits = 0;
  std::string missed;
  for (const auto& e : fs::directory_iterator(EPCALC_CORPUS_DIR)) {
    if (e.path().extension() != ".lang") continue;
    ++files;
    std::ifstream in(e.path());
    std::string first;
    std::getline(in, first);
    std::string code = first.substr(std::string("# expect: ").size());
    auto tss = load_language_file(e.path().string());
    auto ds = tss->check_de_simone();
    auto more = check_de_simone_succ(*tss);
    ds.insert(ds.end(), more.begin(), more.end());
    bool hit = std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
    if (hit) ++hits;
    else missed += " " + e.path().filename().string();
  }
  return {files >= 10 && hits == files,
          std::to_string(hits) + "/" + std::to_string(files) + " mutants flagged with the expected code" + missed};
}

Outcome c6() {
  std::mt19937 rng(20260601);
  std::size_t checked = 0, equiv = 0, tries = 0, disagree = 0;
  EquivOptions o;
  o.evidence_depth = 0;
  while (checked < 1000 && tries < 20000) {
    ++tries;
    ExplicitLtss l = random_ltss(rng, 3, 3, 0.35);
    std::size_t p = rng() % l.state_count(), q = rng() % l.state_count();
    auto want = brute_force_ep(l, p, q, 16);
    if (!want) continue;
    ++checked;
    bool got = ep_bisim_on_lts(l, p, q, o).equivalent;
    if (got != *want) ++disagree;
    if (*want) ++equiv;
  }
  return {checked >= 500 && disagree == 0,
          std::to_string(checked) + " instances (" + std::to_string(equiv) + " equivalent), " +
              std::to_string(disagree) + " disagreements"};
}

// Ep verdict or nullopt when a cap was hit.
std::optional<bool> ep_or_skip(const SuccessorEngine& e, const Term& p, const Term& q, const EquivOptions& o) {
  try {
    return ep_bisim(e, p, q, o).equivalent;
  } catch (const CapExceeded&) {
    return std::nullopt;
  } catch (const HorizonExceeded&) {
    return std::nullopt;
  }
}

EquivOptions small_caps() {
  EquivOptions o;
  o.horizon = 200;
  o.candidate_cap = 4096;
  o.triple_cap = 200000;
  o.evidence_depth = 0;
  return o;
}

Outcome c7() {
  EquivOptions o = small_caps();
  std::size_t terms = 0, violations = 0, skipped = 0, triples = 0, equiv_pairs = 0;
  for (bool abc : {false, true}) {
    auto tss = abc ? load_abcde() : load_ccs();
    SuccessorEngine e(tss, DeriveOptions{64, o.horizon});
    TermGen g(abc ? 7002u : 7001u, abc);
    // pool of bases with rewritten variants, so that equivalent pairs occur
    std::vector<Term> pool;
    while (pool.size() < 120) {
      Term b = g.term(4);
      pool.push_back(b);
      pool.push_back(g.rewrite(b));
      pool.push_back(g.rewrite(pool.back()));
    }
    const std::size_t n = pool.size();
    std::vector<std::vector<std::optional<bool>>> M(n, std::vector<std::optional<bool>>(n));
    for (std::size_t i = 0; i < n; ++i) {
      M[i][i] = ep_or_skip(e, pool[i], pool[i], o);
      if (!M[i][i]) {
        ++skipped;
        continue;
      }
      ++terms;
      if (!*M[i][i]) ++violations;
    }
    // all pairs within each group of three, plus a band of cross pairs
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !M[i][i] || !M[j][j]) continue;
        bool near = i / 3 == j / 3 || (i + 3 > j && j + 3 > i) || (i * 7 + j) % 11 == 0;
        if (!near) continue;
        M[i][j] = ep_or_skip(e, pool[i], pool[j], o);
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!M[i][j] || !M[j][i]) continue;
        if (*M[i][j] != *M[j][i]) ++violations;
        if (i < j && *M[i][j]) ++equiv_pairs;
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !M[i][j] || !*M[i][j]) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == j || !M[j][k] || !*M[j][k]) continue;
          if (!M[i][k]) M[i][k] = ep_or_skip(e, pool[i], pool[k], o);
          if (!M[i][k]) continue;
          ++triples;
          if (!*M[i][k]) ++violations;
        }
      }
  }
  return {terms >= 200 && violations == 0,
          std::to_string(terms) + " terms (" + std::to_string(skipped) + " over caps), " +
              std::to_string(equiv_pairs) + " equivalent pairs, " + std::to_string(triples) +
              " transitivity triples, " + std::to_string(violations) + " violations"};
}

Outcome c8() {
  EquivOptions o = small_caps();
  std::size_t pairs = 0, contexts = 0, violations = 0, unconfirmed = 0, skipped = 0;
  std::string first_bad;
  for (bool abc : {false, true}) {
    auto tss = abc ? load_abcde() : load_ccs();
    SuccessorEngine e(tss, DeriveOptions{64, o.horizon});
    TermGen g(abc ? 8002u : 8001u, abc);
    std::size_t want = abc ? 50 : 60;
    std::size_t mine = 0;
    for (int attempt = 0; mine < want && attempt < 2000; ++attempt) {
      Term p = g.term(3);
      Term q = g.rewrite(p);
      auto base = ep_or_skip(e, p, q, o);
      if (!base) {
        ++skipped;
        continue;
      }
      if (!*base) {
        ++unconfirmed;
        continue;
      }
      ++mine;
      ++pairs;
      for (int c = 0; c < 5; ++c) {
        auto C = g.context(1 + g.pick(2));
        auto v = ep_or_skip(e, C(p), C(q), o);
        if (!v) {
          ++skipped;
          --c;
          continue;
        }
        ++contexts;
        if (!*v) {
          ++violations;
          if (first_bad.empty()) first_bad = " e.g. " + C(p).str() + " vs " + C(q).str();
        }
      }
    }
  }
  return {pairs >= 100 && contexts >= 5 * pairs && violations == 0,
          std::to_string(pairs) + " pairs, " + std::to_string(contexts) + " contexts, " +
              std::to_string(unconfirmed) + " rewrites not confirmed, " + std::to_string(skipped) +
              " skipped over caps, " + std::to_string(violations) + " violations" + first_bad};
}

Outcome c9() {
  std::size_t triples = 0, indicators = 0, absorbed = 0, violations = 0, terms = 0;
  std::vector<std::string> fixed_ccs{"rec X { X = a.X + b.Y, Y = a.Y }", "rec Z { Z = a.Z } | b.0",
                                     "a.0 | b.0", "a.0 + b.0", "(a.0 | 'a.0) \\ {a}",
                                     "rec X { X = a.X + c.X } | rec Y { Y = a.Y }", "(a.b.0 | 'b.0)[a->c]"};
  std::vector<std::string> fixed_abc{"b!.0 | b?.a.0 + 'a.0", "(b!.0 | b?.a.0 + 'a.0) ^ s \\ {a}",
                                     "rec X { X = b?.X } | b!.0", "0 ^ s | b?.c.0", "a.0 ^ s + b?.0"};
  for (bool abc : {false, true}) {
    auto tss = abc ? load_abcde() : load_ccs();
    SuccessorEngine e(tss, DeriveOptions{64, 500});
    std::vector<Term> corpus;
    for (const auto& s : abc ? fixed_abc : fixed_ccs) corpus.push_back(tss->parse(s));
    TermGen g(abc ? 9002u : 9001u, abc);
    for (int i = 0; i < 60; ++i) corpus.push_back(g.term(3));
    for (const auto& p : corpus) {
      SuccRelation rel;
      try {
        rel = successor_relation(e, p);
      } catch (const HorizonExceeded&) {
        continue;
      }
      ++terms;
      for (const auto& out : rel.lts.out)
        for (const auto& t : out)
          if (tss->labels().is_indicator(t.label())) {
            ++indicators;
            if (t.source() != t.target()) ++violations;
          }
      for (const auto& tr : rel.triples) {
        ++triples;
        if (tr.t.source() != tr.u.source() || tr.v.source() != tr.u.target()) ++violations;
        if (tss->labels().is_indicator(tr.u.label())) {
          ++absorbed;
          if (tr.v != tr.t) ++violations;
        }
      }
    }
  }
  return {violations == 0 && triples > 0 && absorbed > 0,
          std::to_string(terms) + " terms, " + std::to_string(triples) + " triples, " +
              std::to_string(indicators) + " indicator transitions, " + std::to_string(absorbed) +
              " indicator-mediated successors, " + std::to_string(violations) + " violations"};
}

// Replace some closed subproofs of t by variable leaves and some closed
// process arguments by process variables; sigma undoes the abstraction.
Transition open_up(const Transition& t, TermGen& g, TSubst& sigma, int& fresh) {
  using K = Transition::Kind;
  if (t.kind() != K::Ctor) {
    if (g.coin(0.5)) {
      std::string name = "t" + std::to_string(fresh++);
      sigma.trans[name] = t;
      return Transition::var(name, t.source(), t.label(), t.target());
    }
    return t;
  }
  std::vector<Transition::Arg> args;
  for (const auto& a : t.args()) {
    if (const Transition* sub = std::get_if<Transition>(&a)) {
      if (g.coin(0.3)) {
        std::string name = "t" + std::to_string(fresh++);
        sigma.trans[name] = *sub;
        args.emplace_back(Transition::var(name, sub->source(), sub->label(), sub->target()));
      } else {
        args.emplace_back(open_up(*sub, g, sigma, fresh));
      }
    } else {
      const Term& p = std::get<Term>(a);
      if (g.coin(0.5)) {
        std::string name = "x" + std::to_string(fresh++);
        sigma.procs[name] = p;
        args.emplace_back(Term::var(name));
      } else {
        args.emplace_back(p);
      }
    }
  }
  return Transition::ctor(*t.rule(), args);
}

Outcome c10() {
  std::size_t pairs = 0, violations = 0;
  for (bool abc : {false, true}) {
    auto tss = abc ? load_abcde() : load_ccs();
    Deriver d(tss);
    TermGen g(abc ? 10002u : 10001u, abc);
    for (int attempt = 0; pairs < (abc ? 100u : 50u) && attempt < 5000; ++attempt) {
      Term p = g.term(3);
      const auto& en = d.enabled(p);
      if (en.empty()) continue;
      const Transition& t = en[static_cast<std::size_t>(g.pick(static_cast<int>(en.size())))];
      TSubst sigma;
      int fresh = 0;
      Transition e = open_up(t, g, sigma, fresh);
      if (sigma.procs.empty() && sigma.trans.empty()) continue;
      ++pairs;
      try {
        if (!matches(sigma, e)) {
          ++violations;
          continue;
        }
        Transition r = apply_tsubst(e, sigma);
        if (r.source() != substitute(e.source(), sigma.procs) || r.label() != e.label() ||
            r.target() != substitute(e.target(), sigma.procs) || !r.is_closed() || r != t)
          ++violations;
      } catch (const Error&) {
        ++violations;
      }
    }
  }
  return {pairs >= 100 && violations == 0,
          std::to_string(pairs) + " open transitions with matching substitutions, " +
              std::to_string(violations) + " violations"};
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5}, {6, c6}, {7, c7}, {8, c8}, {9, c9}, {10, c10}};
  int failed = 0;
  for (const auto& [n, f] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d: %s  %s  (%.2fs)\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
