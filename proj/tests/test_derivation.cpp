#include <gtest/gtest.h>

#include "epcalc/derivation.hpp"
#include "epcalc/error.hpp"
#include "epcalc/languages.hpp"

using namespace epcalc;

TEST(Derivation, ThreeTransitionsOfParallel) {
  auto ccs = load_ccs();
  Deriver d(ccs);
  Term pq = ccs->parse("rec X { X = a.X + c.X } | rec Y { Y = a.Y }");
  const auto& en = d.enabled(pq);
  ASSERT_EQ(en.size(), 3u);
  std::set<std::string> names;
  int a = 0;
  for (const auto& t : en) {
    names.insert(t.str());
    if (t.label() == "a") ++a;
  }
  EXPECT_EQ(names.size(), 3u);
  EXPECT_EQ(a, 2);
  EXPECT_EQ(en[0].source(), pq);
  for (const auto& t : en) std::cout << t.str() << "\n";
}

TEST(Derivation, NilAndDiscard) {
  Deriver ccs(load_ccs());
  EXPECT_TRUE(ccs.enabled(Term::nil()).empty());
  auto abc = load_abcde({"a"}, {"b", "d"}, {"s"});
  Deriver d(abc);
  const auto& en = d.enabled(Term::nil());
  ASSERT_EQ(en.size(), 2u);
  for (const auto& t : en) {
    EXPECT_EQ(t.target(), t.source());
    std::cout << t.str() << " " << t.label() << "\n";
  }
}

TEST(Derivation, Unguarded) {
  Deriver d(load_ccs());
  EXPECT_THROW(d.enabled(parse_term("rec X { X = X }")), DepthBoundExceeded);
}

TEST(Derivation, ProofRoundTrip) {
  auto abc = load_abcde();
  Deriver d(abc);
  Term p = abc->parse("(b!.0 | b?.a.0 + 'a.0) ^ s \\ {a} | rec X { X = b?.X }");
  Lts lts = explore(d, p);
  EXPECT_GT(lts.transition_count(), 0u);
  for (const auto& out : lts.out)
    for (const auto& t : out) {
      EXPECT_EQ(from_proof(*abc, proof_tree(t)), t);
      if (abc->labels().is_indicator(t.label())) EXPECT_EQ(t.source(), t.target());
    }
}

TEST(Derivation, BroadcastWithDiscard) {
  auto abc = load_abcde();
  Deriver d(abc);
  const auto& en = d.enabled(abc->parse("b!.0 | 0"));
  bool found = false;
  for (const auto& t : en)
    if (t.label() == "b!") {
      found = true;
      EXPECT_EQ(t.target(), abc->parse("0 | 0"));
      EXPECT_EQ(t.rule()->name.family, "parC");
    }
  EXPECT_TRUE(found);
  const auto& sig = d.enabled(abc->parse("0 ^ s"));
  bool emit = false;
  for (const auto& t : sig)
    if (t.label() == "'s") emit = t.target() == t.source();
  EXPECT_TRUE(emit);
}
