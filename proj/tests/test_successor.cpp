#include <gtest/gtest.h>

#include <iostream>

#include "epcalc/error.hpp"
#include "epcalc/languages.hpp"
#include "epcalc/successor.hpp"

using namespace epcalc;

namespace {

const Transition& find_named(const std::vector<Transition>& ts, const std::string& name) {
  for (const auto& t : ts)
    if (t.str() == name) return t;
  throw std::runtime_error("no transition " + name);
}

}  // namespace

TEST(SuccFormat, BuiltinsClean) {
  for (const auto& tss : {load_ccs(), load_abcde()}) {
    auto ds = check_de_simone_succ(*tss);
    for (const auto& d : ds) std::cout << d.str() << "\n";
    EXPECT_TRUE(ds.empty());
  }
}

TEST(SuccFormat, RuleOneCount) {
  auto ex = expand_rule1(*load_abcde());
  for (const auto& [k, n] : ex.count_by_type) std::cout << k << " " << n << "\n";
  EXPECT_EQ(ex.total, 26);
}

TEST(Successor, IntroExample) {
  auto ccs = load_ccs();
  SuccessorEngine e(ccs);
  auto [p, q] = ccs_example_pq();
  const auto& en = e.deriver().enabled(q);
  for (const auto& t : en) std::cout << t.str() << "\n";
  const Transition& u = find_named(en, "(rec Z { Z = a.Z }) parR (act_b 0)");
  const Transition& t1 = find_named(en, "recAct(Z,{Z = a.Z},act_a (rec Z { Z = a.Z })) parL (b.0)");
  const auto& s = e.successors(u, t1);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], u);
  const auto& s2 = e.successors(t1, u);
  ASSERT_EQ(s2.size(), 1u);
  EXPECT_EQ(s2[0].source(), u.target());
  // P is a single component: every pair of distinct transitions is unrelated
  auto rel = successor_relation(e, p);
  for (const auto& tr : rel.triples) EXPECT_EQ(tr.t, tr.u) << tr.t.str() << " / " << tr.u.str();
}

TEST(Successor, Concurrency) {
  auto ccs = load_ccs();
  SuccessorEngine e(ccs);
  const auto& en = e.deriver().enabled(ccs->parse("a.0 | b.0"));
  ASSERT_EQ(en.size(), 2u);
  EXPECT_EQ(e.successors(en[0], en[1]).size(), 1u);
  EXPECT_EQ(e.successors(en[1], en[0]).size(), 1u);
  const auto& ch = e.deriver().enabled(ccs->parse("a.0 + b.0"));
  ASSERT_EQ(ch.size(), 2u);
  EXPECT_TRUE(e.successors(ch[0], ch[1]).empty());
  EXPECT_TRUE(e.successors(ch[0], ch[0]).empty());
  EXPECT_THROW(e.successors(en[0], ch[0]), SourceMismatch);
}

TEST(Successor, AbcdeRelationWellFormed) {
  auto abc = load_abcde();
  SuccessorEngine e(abc);
  auto rel = successor_relation(e, abc->parse("(b!.a.0 | b?.0 + c.0) ^ s | 'c.0"));
  EXPECT_FALSE(rel.triples.empty());
  for (const auto& tr : rel.triples) {
    EXPECT_EQ(tr.t.source(), tr.u.source());
    EXPECT_EQ(tr.v.source(), tr.u.target());
  }
}

TEST(Successor, CcsLabelPreservation) {
  auto ccs = load_ccs();
  SuccessorEngine e(ccs);
  for (const char* s : {"a.0 | b.0", "(a.0 | 'a.0) | b.a.0", "rec Z { Z = a.Z } | b.0",
                        "(a.b.0 | 'b.0)[a->c] \\ {b}", "(a.0 + b.0) | (c.0 | 'c.0)"}) {
    auto rel = successor_relation(e, ccs->parse(s));
    for (const auto& tr : rel.triples) EXPECT_EQ(tr.v.label(), tr.t.label()) << s << ": " << tr.t.str();
  }
}

TEST(Successor, RuleOneSemantics) {
  auto abc = load_abcde();
  SuccessorEngine e(abc);
  const auto& L = abc->labels();
  std::size_t checked = 0;
  for (const char* s : {"0", "a.0", "b?.0 + b!.0", "a.0 ^ s", "(b?.0 + c.0) ^ s", "rec X { X = b?.X + a.X }",
                        "b!.0 + 0 ^ s"}) {
    Term p = abc->parse(s);
    const auto& en = e.deriver().enabled(p);
    for (const auto& t : en)
      for (const auto& u : en) {
        if (!L.is_indicator(u.label())) continue;
        ++checked;
        const auto& vs = e.successors(t, u);
        ASSERT_EQ(vs.size(), 1u) << s << ": " << t.str() << " under " << u.str();
        EXPECT_EQ(vs[0], t);
      }
  }
  EXPECT_GT(checked, 10u);
}
