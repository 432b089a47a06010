#pragma once

// Seeded generators shared by the acceptance and property suites.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "epcalc/equivalence.hpp"
#include "epcalc/syntax.hpp"

namespace epcalc::testing {

class TermGen {
public:
  TermGen(unsigned seed, bool abcde) : rng_(seed), abcde_(abcde) {}

  std::mt19937& rng() { return rng_; }
  bool abcde() const { return abcde_; }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  Label action() {
    static const std::vector<Label> ccs{"a", "b", "'a", "'b", "tau"};
    static const std::vector<Label> abc{"a", "'a", "c", "b!", "b?", "tau"};
    const auto& v = abcde_ ? abc : ccs;
    return v[static_cast<std::size_t>(pick(static_cast<int>(v.size())))];
  }

  /// A closed term of depth at most `depth`.
  Term term(int depth) {
    if (depth <= 0 || coin(0.15)) return coin(0.8) ? Term::nil() : loop();
    int k = pick(abcde_ ? 8 : 7);
    switch (k) {
      case 0:
      case 1:
      case 2: return Term::prefix(action(), term(depth - 1));
      case 3: return Term::choice(term(depth - 1), term(depth - 1));
      case 4: return Term::par(term(depth - 1), term(depth - 1));
      case 5:
        return coin(0.5) ? Term::op(Operator::restrict({"a"}), {term(depth - 1)})
                         : Term::op(Operator::relabel({{"a", abcde_ ? "c" : "b"}}), {term(depth - 1)});
      case 6: return loop();
      default: return Term::op(Operator::signal("s"), {term(depth - 1)});
    }
  }

  /// rec X { X = alpha.X } or rec X { X = alpha.X + beta.0 }
  Term loop() {
    Term body = Term::prefix(action(), Term::var("X"));
    if (coin(0.4)) body = Term::choice(body, Term::prefix(action(), Term::nil()));
    return Term::rec("X", {{"X", body}});
  }

  /// A term equal to `p` up to an identity that preserves ep-bisimilarity,
  /// applied at the root or at a random subterm.
  Term rewrite(const Term& p) {
    if (p.is_op() && !p.args().empty() && coin(0.4)) {
      std::vector<Term> args = p.args();
      auto i = static_cast<std::size_t>(pick(static_cast<int>(args.size())));
      args[i] = rewrite(args[i]);
      return Term::op(p.oper(), args);
    }
    if (p.is_op() && p.oper().kind == OpKind::Choice && coin(0.5))
      return Term::choice(p.args()[1], p.args()[0]);
    if (p.is_op() && p.oper().kind == OpKind::Parallel && coin(0.5)) {
      const Term& l = p.args()[0];
      if (l.is_op() && l.oper().kind == OpKind::Parallel && coin(0.5))
        return Term::par(l.args()[0], Term::par(l.args()[1], p.args()[1]));
      return Term::par(p.args()[1], p.args()[0]);
    }
    switch (pick(4)) {
      case 0: return Term::par(p, Term::nil());
      case 1: return Term::par(Term::nil(), p);
      case 2: return Term::choice(p, Term::nil());
      default: return Term::choice(Term::nil(), p);
    }
  }

  /// A one-hole context of depth at most `depth`; the hole is filled by the
  /// argument of the returned function.
  std::function<Term(const Term&)> context(int depth) {
    if (depth <= 0) return [](const Term& h) { return h; };
    auto inner = context(depth - 1);
    Term r = term(1);
    Label a = action();
    switch (pick(abcde_ ? 9 : 8)) {
      case 0: return [=](const Term& h) { return Term::prefix(a, inner(h)); };
      case 1: return [=](const Term& h) { return Term::choice(inner(h), r); };
      case 2: return [=](const Term& h) { return Term::choice(r, inner(h)); };
      case 3: return [=](const Term& h) { return Term::par(inner(h), r); };
      case 4: return [=](const Term& h) { return Term::par(r, inner(h)); };
      case 5: return [=](const Term& h) { return Term::op(Operator::restrict({"a"}), {inner(h)}); };
      case 6: {
        Label to = abcde_ ? "c" : "b";
        return [=](const Term& h) { return Term::op(Operator::relabel({{"a", to}}), {inner(h)}); };
      }
      case 7:
        return [=](const Term& h) {
          return Term::rec("X", {{"X", Term::choice(Term::prefix(a, Term::var("X")), inner(h))}});
        };
      default: return [=](const Term& h) { return Term::op(Operator::signal("s"), {inner(h)}); };
    }
  }

private:
  std::mt19937 rng_;
  bool abcde_;
};

/// A well-formed raw LTSS with at most `states` states, `per_state`
/// transitions per state over labels x and y.
inline ExplicitLtss random_ltss(std::mt19937& rng, int states, int per_state, double succ_p) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  ExplicitLtss l;
  int n = 1 + pick(states);
  for (int i = 0; i < n; ++i) l.add_state("s" + std::to_string(i));
  int id = 0;
  for (int s = 0; s < n; ++s) {
    int k = pick(per_state + 1);
    for (int j = 0; j < k; ++j)
      l.add_transition("t" + std::to_string(id++), static_cast<std::size_t>(s), pick(2) ? "x" : "y",
                       static_cast<std::size_t>(pick(n)));
  }
  std::bernoulli_distribution coin(succ_p);
  for (std::size_t s = 0; s < l.state_count(); ++s)
    for (std::size_t t : l.enabled(s))
      for (std::size_t u : l.enabled(s))
        for (std::size_t v : l.enabled(l.transition(u).tgt))
          if (coin(rng)) l.add_successor(t, u, v);
  return l;
}

}  // namespace epcalc::testing
