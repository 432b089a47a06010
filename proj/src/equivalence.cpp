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
#include <cstdint>
#include <deque>
#include <set>

#include "epcalc/equivalence.hpp"
#include "epcalc/error.hpp"

namespace epcalc {

namespace {

using Pair = std::pair<std::size_t, std::size_t>;
using Rel = std::vector<Pair>;   // sorted

bool in_rel(const Rel& r, Pair p) { return std::binary_search(r.begin(), r.end(), p); }

struct Violation {
  std::string clause;
  std::size_t t, u, x;
};

// Clauses 2a and 2b for the move v R w from R to R'.
std::optional<Violation> check2(const ExplicitLtss& l, const Rel& R, std::size_t v, std::size_t w,
                                const Rel& R2) {
  for (const auto& [t, u] : R) {
    const auto& s1 = l.successors(t, v);
    const auto& s2 = l.successors(u, w);
    for (std::size_t t2 : s1) {
      bool ok = std::any_of(s2.begin(), s2.end(), [&](std::size_t u2) { return in_rel(R2, {t2, u2}); });
      if (!ok) return Violation{"2a", t, u, t2};
    }
    for (std::size_t u2 : s2) {
      bool ok = std::any_of(s1.begin(), s1.end(), [&](std::size_t t2) { return in_rel(R2, {t2, u2}); });
      if (!ok) return Violation{"2b", t, u, u2};
    }
  }
  return std::nullopt;
}

std::string rel_str(const ExplicitLtss& l, const Rel& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ", ";
    s += "(" + l.transition(r[i].first).id + ", " + l.transition(r[i].second).id + ")";
  }
  return s + "}";
}

std::string violation_str(const ExplicitLtss& l, const Violation& v, std::size_t mv, std::size_t mw) {
  const auto& T = [&](std::size_t i) -> const std::string& { return l.transition(i).id; };
  if (v.clause == "2a")
    return T(v.t) + " R " + T(v.u) + " and " + T(v.t) + " ~[" + T(mv) + "]~> " + T(v.x) +
           ", but no u' with " + T(v.u) + " ~[" + T(mw) + "]~> u' and " + T(v.x) + " R' u'";
  return T(v.t) + " R " + T(v.u) + " and " + T(v.u) + " ~[" + T(mw) + "]~> " + T(v.x) +
         ", but no t' with " + T(v.t) + " ~[" + T(mv) + "]~> t' and t' R' " + T(v.x);
}

/// Label-consistent, total and surjective relations between en(p) and en(q).
/// On none, `why` gets the violated clause and its detail.
std::vector<Rel> candidates(const ExplicitLtss& l, std::size_t p, std::size_t q,
                            const EquivOptions& o, std::pair<std::string, std::string>& why) {
  for (std::size_t s : {p, q})
    if (l.enabled(s).size() > o.enabled_cap)
      throw CapExceeded("state " + l.state_name(s) + " enables " + std::to_string(l.enabled(s).size()) +
                        " transitions, above the cap of " + std::to_string(o.enabled_cap));
  std::map<Label, std::vector<std::size_t>> a, b;
  for (std::size_t t : l.enabled(p)) a[l.transition(t).label].push_back(t);
  for (std::size_t u : l.enabled(q)) b[l.transition(u).label].push_back(u);
  for (const auto& [lab, ts] : a)
    if (!b.count(lab)) {
      why = {"1a", l.transition(ts[0]).id + " has no partner with label " + lab + " at " + l.state_name(q)};
      return {};
    }
  for (const auto& [lab, us] : b)
    if (!a.count(lab)) {
      why = {"1b", l.transition(us[0]).id + " has no partner with label " + lab + " at " + l.state_name(p)};
      return {};
    }
  std::vector<Rel> acc{Rel{}};
  for (const auto& [lab, A] : a) {
    const auto& B = b.at(lab);
    const std::uint32_t full = (std::uint32_t{1} << B.size()) - 1;
    std::vector<Rel> opts;
    Rel cur;
    auto rows = [&](auto&& self, std::size_t i, std::uint32_t cover) -> void {
      if (i == A.size()) {
        if (cover == full) opts.push_back(cur);
        if (opts.size() > o.candidate_cap)
          throw CapExceeded("more than " + std::to_string(o.candidate_cap) +
                            " candidate relations at (" + l.state_name(p) + ", " + l.state_name(q) + ")");
        return;
      }
      for (std::uint32_t m = 1; m <= full; ++m) {
        std::size_t n = cur.size();
        for (std::size_t j = 0; j < B.size(); ++j)
          if (m & (std::uint32_t{1} << j)) cur.emplace_back(A[i], B[j]);
        self(self, i + 1, cover | m);
        cur.resize(n);
      }
    };
    rows(rows, 0, 0);
    std::vector<Rel> next;
    for (const auto& x : acc)
      for (const auto& y : opts) {
        Rel r = x;
        r.insert(r.end(), y.begin(), y.end());
        next.push_back(std::move(r));
        if (next.size() > o.candidate_cap)
          throw CapExceeded("more than " + std::to_string(o.candidate_cap) +
                            " candidate relations at (" + l.state_name(p) + ", " + l.state_name(q) + ")");
      }
    acc = std::move(next);
  }
  for (auto& r : acc) std::sort(r.begin(), r.end());
  return acc;
}

class EpSearch {
public:
  EpSearch(const ExplicitLtss& l, const EquivOptions& o) : l_(l), o_(o) {}

  EpVerdict run(std::size_t p, std::size_t q);

private:
  const ExplicitLtss& l_;
  const EquivOptions& o_;
  std::map<Pair, std::size_t> pair_index_;
  std::vector<Pair> pairs_;
  std::vector<std::vector<std::size_t>> pair_triples_;
  std::vector<std::pair<std::string, std::string>> no_cand_;
  std::vector<std::size_t> triple_pair_;
  std::vector<Rel> triple_rel_;
  std::vector<std::vector<std::vector<std::size_t>>> valid_;
  std::vector<int> killed_;   // round of removal, -1 while alive
  std::vector<std::size_t> blame_;

  std::size_t pair_of(std::size_t tv, std::size_t tw) const { return pair_index_.at({tv, tw}); }
  Refutation refute_pair(std::size_t pi, int depth) const;
  Refutation refute_triple(std::size_t T, int depth) const;
};

EpVerdict EpSearch::run(std::size_t p, std::size_t q) {
  std::deque<std::size_t> todo;
  auto intern = [&](Pair pr) {
    auto [it, fresh] = pair_index_.emplace(pr, pairs_.size());
    if (fresh) {
      pairs_.push_back(pr);
      todo.push_back(it->second);
    }
  };
  intern({p, q});
  pair_triples_.clear();
  while (!todo.empty()) {
    std::size_t pi = todo.front();
    todo.pop_front();
    auto [a, b] = pairs_[pi];
    std::pair<std::string, std::string> why;
    auto cands = candidates(l_, a, b, o_, why);
    if (pair_triples_.size() < pairs_.size()) {
      pair_triples_.resize(pairs_.size());
      no_cand_.resize(pairs_.size());
    }
    no_cand_[pi] = why;
    for (auto& r : cands) {
      pair_triples_[pi].push_back(triple_rel_.size());
      triple_pair_.push_back(pi);
      triple_rel_.push_back(std::move(r));
      if (triple_rel_.size() > o_.triple_cap)
        throw CapExceeded("more than " + std::to_string(o_.triple_cap) + " candidate triples");
    }
    if (!cands.empty())
      for (std::size_t v : l_.enabled(a))
        for (std::size_t w : l_.enabled(b))
          if (l_.transition(v).label == l_.transition(w).label)
            intern({l_.transition(v).tgt, l_.transition(w).tgt});
  }
  pair_triples_.resize(pairs_.size());
  no_cand_.resize(pairs_.size());

  const std::size_t n = triple_rel_.size();
  valid_.assign(n, {});
  for (std::size_t T = 0; T < n; ++T) {
    const Rel& R = triple_rel_[T];
    valid_[T].resize(R.size());
    for (std::size_t k = 0; k < R.size(); ++k) {
      auto [v, w] = R[k];
      std::size_t tp = pair_of(l_.transition(v).tgt, l_.transition(w).tgt);
      for (std::size_t T2 : pair_triples_[tp])
        if (!check2(l_, R, v, w, triple_rel_[T2])) valid_[T][k].push_back(T2);
    }
  }

  killed_.assign(n, -1);
  blame_.assign(n, 0);
  int round = 0;
  for (;;) {
    std::vector<std::size_t> kill;
    for (std::size_t T = 0; T < n; ++T) {
      if (killed_[T] >= 0) continue;
      for (std::size_t k = 0; k < valid_[T].size(); ++k) {
        const auto& vs = valid_[T][k];
        if (std::none_of(vs.begin(), vs.end(), [&](std::size_t T2) { return killed_[T2] < 0; })) {
          kill.push_back(T);
          blame_[T] = k;
          break;
        }
      }
    }
    if (kill.empty()) break;
    ++round;
    for (std::size_t T : kill) killed_[T] = round;
  }

  EpVerdict v;
  v.pairs = pairs_.size();
  v.candidates = n;
  v.rounds = static_cast<std::size_t>(round);
  const auto& roots = pair_triples_[0];
  auto root = std::find_if(roots.begin(), roots.end(), [&](std::size_t T) { return killed_[T] < 0; });
  if (root == roots.end()) {
    v.refutation = refute_pair(0, o_.evidence_depth);
    return v;
  }
  v.equivalent = true;
  EpWitness w;
  std::map<std::size_t, std::size_t> idx;
  std::vector<std::size_t> order{*root};
  idx[*root] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t T = order[i];
    EpTriple tr;
    auto [a, b] = pairs_[triple_pair_[T]];
    tr.p = l_.state_name(a);
    tr.q = l_.state_name(b);
    for (std::size_t k = 0; k < triple_rel_[T].size(); ++k) {
      auto [t, u] = triple_rel_[T][k];
      tr.R.emplace_back(l_.transition(t).id, l_.transition(u).id);
      const auto& vs = valid_[T][k];
      std::size_t T2 = *std::find_if(vs.begin(), vs.end(), [&](std::size_t x) { return killed_[x] < 0; });
      auto [it, fresh] = idx.emplace(T2, order.size());
      if (fresh) order.push_back(T2);
      tr.next.push_back(it->second);
    }
    w.triples.push_back(std::move(tr));
  }
  v.witness = std::move(w);
  return v;
}

constexpr std::size_t kMaxChildren = 16;

Refutation EpSearch::refute_pair(std::size_t pi, int depth) const {
  Refutation r;
  r.p = l_.state_name(pairs_[pi].first);
  r.q = l_.state_name(pairs_[pi].second);
  if (pair_triples_[pi].empty()) {
    r.clause = no_cand_[pi].first;
    r.detail = no_cand_[pi].second;
    return r;
  }
  r.detail = "every candidate R fails";
  for (std::size_t T : pair_triples_[pi]) {
    if (r.children.size() == kMaxChildren) {
      r.truncated = true;
      break;
    }
    r.children.push_back(refute_triple(T, depth));
  }
  return r;
}

Refutation EpSearch::refute_triple(std::size_t T, int depth) const {
  Refutation r;
  auto [a, b] = pairs_[triple_pair_[T]];
  r.p = l_.state_name(a);
  r.q = l_.state_name(b);
  r.clause = "R";
  const Rel& R = triple_rel_[T];
  auto [v, w] = R[blame_[T]];
  r.detail = "R = " + rel_str(l_, R) + "; move " + l_.transition(v).id + " R " + l_.transition(w).id;
  std::size_t tp = pair_of(l_.transition(v).tgt, l_.transition(w).tgt);
  if (pair_triples_[tp].empty()) {
    Refutation leaf;
    leaf.p = l_.state_name(pairs_[tp].first);
    leaf.q = l_.state_name(pairs_[tp].second);
    leaf.clause = no_cand_[tp].first;
    leaf.detail = no_cand_[tp].second;
    r.children.push_back(std::move(leaf));
    return r;
  }
  for (std::size_t T2 : pair_triples_[tp]) {
    if (r.children.size() == kMaxChildren) {
      r.truncated = true;
      break;
    }
    if (auto bad = check2(l_, R, v, w, triple_rel_[T2])) {
      Refutation leaf;
      leaf.p = l_.state_name(pairs_[tp].first);
      leaf.q = l_.state_name(pairs_[tp].second);
      leaf.clause = bad->clause;
      leaf.detail = "R' = " + rel_str(l_, triple_rel_[T2]) + ": " + violation_str(l_, *bad, v, w);
      r.children.push_back(std::move(leaf));
    } else if (depth > 0) {
      r.children.push_back(refute_triple(T2, depth - 1));
    } else {
      Refutation cut;
      cut.p = l_.state_name(pairs_[tp].first);
      cut.q = l_.state_name(pairs_[tp].second);
      cut.clause = "R";
      cut.detail = "R' = " + rel_str(l_, triple_rel_[T2]) + " is refuted further down";
      cut.truncated = true;
      r.children.push_back(std::move(cut));
    }
  }
  return r;
}

}  // namespace

EpVerdict ep_bisim_on_lts(const ExplicitLtss& l, std::size_t p, std::size_t q, const EquivOptions& opts) {
  if (p >= l.state_count() || q >= l.state_count()) throw MalformedLtss("unknown root state");
  EpSearch s(l, opts);
  return s.run(p, q);
}

EpVerdict ep_bisim(const SuccessorEngine& e, const Term& p, const Term& q, const EquivOptions& opts) {
  ExplicitLtss l = to_explicit(successor_relation(e, std::vector<Term>{p, q}));
  return ep_bisim_on_lts(l, *l.find_state(p.str()), *l.find_state(q.str()), opts);
}

EpVerdict ep_bisim(std::shared_ptr<const Tss> tss, const Term& p, const Term& q, const EquivOptions& opts) {
  SuccessorEngine e(std::move(tss), DeriveOptions{opts.depth, opts.horizon});
  return ep_bisim(e, p, q, opts);
}

// ---- strong bisimilarity

namespace {

struct Refinement {
  std::vector<std::vector<std::size_t>> history;   // block per state, per round
};

Refinement refine(const ExplicitLtss& l) {
  Refinement r;
  r.history.emplace_back(l.state_count(), 0);
  std::size_t blocks = l.state_count() ? 1 : 0;
  for (;;) {
    const auto& prev = r.history.back();
    using Sig = std::pair<std::size_t, std::vector<std::pair<Label, std::size_t>>>;
    std::map<Sig, std::size_t> ids;
    std::vector<std::size_t> next(l.state_count());
    for (std::size_t s = 0; s < l.state_count(); ++s) {
      Sig sig{prev[s], {}};
      for (std::size_t t : l.enabled(s)) sig.second.emplace_back(l.transition(t).label, prev[l.transition(t).tgt]);
      std::sort(sig.second.begin(), sig.second.end());
      sig.second.erase(std::unique(sig.second.begin(), sig.second.end()), sig.second.end());
      next[s] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    if (ids.size() == blocks) break;
    blocks = ids.size();
    r.history.push_back(std::move(next));
  }
  return r;
}

Refutation distinguish(const ExplicitLtss& l, const Refinement& rf, std::size_t p, std::size_t q, int depth) {
  Refutation r;
  r.p = l.state_name(p);
  r.q = l.state_name(q);
  std::size_t k = 1;
  while (rf.history[k][p] == rf.history[k][q]) ++k;
  const auto& prev = rf.history[k - 1];
  auto attack = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    for (std::size_t t : l.enabled(a)) {
      bool ok = false;
      for (std::size_t u : l.enabled(b))
        ok = ok || (l.transition(u).label == l.transition(t).label &&
                    prev[l.transition(u).tgt] == prev[l.transition(t).tgt]);
      if (!ok) return t;
    }
    return std::nullopt;
  };
  std::size_t a = p, b = q;
  auto t = attack(p, q);
  r.clause = "1a";
  if (!t) {
    t = attack(q, p);
    std::swap(a, b);
    r.clause = "1b";
  }
  const auto& tr = l.transition(*t);
  r.detail = tr.id + " with label " + tr.label;
  std::vector<std::size_t> replies;
  for (std::size_t u : l.enabled(b))
    if (l.transition(u).label == tr.label) replies.push_back(u);
  if (replies.empty()) {
    r.detail += " has no partner";
    return r;
  }
  for (std::size_t u : replies) {
    if (depth <= 0 || r.children.size() == kMaxChildren) {
      r.truncated = true;
      break;
    }
    std::size_t x = l.transition(*t).tgt, y = l.transition(u).tgt;
    Refutation c = a == p ? distinguish(l, rf, x, y, depth - 1) : distinguish(l, rf, y, x, depth - 1);
    c.detail = "reply " + l.transition(u).id + ": " + c.detail;
    r.children.push_back(std::move(c));
  }
  return r;
}

}  // namespace

StrongVerdict strong_bisim(const ExplicitLtss& l, std::size_t p, std::size_t q, const EquivOptions& opts) {
  if (p >= l.state_count() || q >= l.state_count()) throw MalformedLtss("unknown root state");
  Refinement rf = refine(l);
  const auto& fin = rf.history.back();
  StrongVerdict v;
  v.rounds = rf.history.size() - 1;
  v.equivalent = fin[p] == fin[q];
  if (!v.equivalent) {
    v.evidence = distinguish(l, rf, p, q, opts.evidence_depth);
    return v;
  }
  auto rq = l.reachable(q);
  for (std::size_t s : l.reachable(p))
    for (std::size_t s2 : rq)
      if (fin[s] == fin[s2]) v.relation.emplace_back(l.state_name(s), l.state_name(s2));
  return v;
}

StrongVerdict strong_bisim(const Tss& tss, const Term& p, const Term& q, const EquivOptions& opts) {
  auto shared = std::shared_ptr<const Tss>(&tss, [](const Tss*) {});
  Deriver d(shared, DeriveOptions{opts.depth, opts.horizon});
  Lts lts = explore(d, std::vector<Term>{p, q});
  ExplicitLtss l = to_explicit(lts);
  return strong_bisim(l, *l.find_state(p.str()), *l.find_state(q.str()), opts);
}

// ---- witness checking

bool verify_witness(const ExplicitLtss& l, const EpWitness& w, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (w.triples.empty()) return fail("empty witness");
  std::vector<Rel> rels;
  std::vector<Pair> states;
  for (std::size_t i = 0; i < w.triples.size(); ++i) {
    const auto& tr = w.triples[i];
    auto p = l.find_state(tr.p), q = l.find_state(tr.q);
    if (!p || !q) return fail("triple " + std::to_string(i) + ": unknown state");
    Rel R;
    for (const auto& [a, b] : tr.R) {
      auto t = l.find_transition(a), u = l.find_transition(b);
      if (!t || !u) return fail("triple " + std::to_string(i) + ": unknown transition");
      if (l.transition(*t).src != *p || l.transition(*u).src != *q)
        return fail("triple " + std::to_string(i) + ": R is not within en(p) x en(q)");
      if (l.transition(*t).label != l.transition(*u).label)
        return fail("clause 1c at triple " + std::to_string(i) + ": " + a + " and " + b + " differ in label");
      R.emplace_back(*t, *u);
    }
    std::sort(R.begin(), R.end());
    R.erase(std::unique(R.begin(), R.end()), R.end());
    for (std::size_t t : l.enabled(*p))
      if (std::none_of(R.begin(), R.end(), [&](Pair x) { return x.first == t; }))
        return fail("clause 1a at triple " + std::to_string(i) + ": " + l.transition(t).id + " unmatched");
    for (std::size_t u : l.enabled(*q))
      if (std::none_of(R.begin(), R.end(), [&](Pair x) { return x.second == u; }))
        return fail("clause 1b at triple " + std::to_string(i) + ": " + l.transition(u).id + " unmatched");
    if (tr.next.size() != tr.R.size())
      return fail("triple " + std::to_string(i) + ": one target triple is needed per pair of R");
    rels.push_back(std::move(R));
    states.emplace_back(*p, *q);
  }
  for (std::size_t i = 0; i < w.triples.size(); ++i) {
    const auto& tr = w.triples[i];
    for (std::size_t k = 0; k < tr.R.size(); ++k) {
      std::size_t v = *l.find_transition(tr.R[k].first), u = *l.find_transition(tr.R[k].second);
      std::size_t j = tr.next[k];
      if (j >= w.triples.size()) return fail("triple " + std::to_string(i) + ": dangling target index");
      if (states[j] != Pair{l.transition(v).tgt, l.transition(u).tgt})
        return fail("clause 2 at triple " + std::to_string(i) + ": target triple " + std::to_string(j) +
                    " is not at (target(v), target(w))");
      if (auto bad = check2(l, rels[i], v, u, rels[j]))
        return fail("clause " + bad->clause + " at triple " + std::to_string(i) + ": " +
                    violation_str(l, *bad, v, u));
    }
  }
  return true;
}

bool verify_witness(std::shared_ptr<const Tss> tss, const EpWitness& w, std::string* why,
                    const EquivOptions& opts) {
  if (w.triples.empty()) {
    if (why) *why = "empty witness";
    return false;
  }
  Term p = tss->parse(w.triples[0].p), q = tss->parse(w.triples[0].q);
  SuccessorEngine e(tss, DeriveOptions{opts.depth, opts.horizon});
  ExplicitLtss l = to_explicit(successor_relation(e, std::vector<Term>{p, q}));
  return verify_witness(l, w, why);
}

}  // namespace epcalc
