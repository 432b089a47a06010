#include <gtest/gtest.h>

#include <iostream>

#include "epcalc/equivalence.hpp"
#include "epcalc/error.hpp"
#include "epcalc/languages.hpp"

using namespace epcalc;

namespace {

// The two programs of the introduction: identical LTS, the right one with
// t1 ~[u]~> t2 and u ~[t1]~> u.
const char* kPrograms = R"({
  "states": ["L1", "L2", "R1", "R2"],
  "transitions": [
    {"id": "lt1", "src": "L1", "label": "y", "tgt": "L1"},
    {"id": "lu",  "src": "L1", "label": "x", "tgt": "L2"},
    {"id": "lt2", "src": "L2", "label": "y", "tgt": "L2"},
    {"id": "rt1", "src": "R1", "label": "y", "tgt": "R1"},
    {"id": "ru",  "src": "R1", "label": "x", "tgt": "R2"},
    {"id": "rt2", "src": "R2", "label": "y", "tgt": "R2"}
  ],
  "successors": [["rt1", "ru", "rt2"], ["ru", "rt1", "ru"]],
  "actions": ["x", "y"]
})";

bool mentions(const Refutation& r, const std::string& clause) {
  if (r.clause == clause) return true;
  for (const auto& c : r.children)
    if (mentions(c, clause)) return true;
  return false;
}

}  // namespace

TEST(Equivalence, IntroExampleTerms) {
  auto ccs = load_ccs();
  auto [p, q] = ccs_example_pq();
  auto sv = strong_bisim(*ccs, p, q);
  EXPECT_TRUE(sv.equivalent);
  std::cout << sv.to_json() << "\n";
  auto ev = ep_bisim(ccs, p, q);
  EXPECT_FALSE(ev.equivalent);
  ASSERT_TRUE(ev.refutation);
  std::cout << ev.refutation->str();
  EXPECT_TRUE(mentions(*ev.refutation, "2b"));
}

TEST(Equivalence, Reflexive) {
  auto ccs = load_ccs();
  for (const char* s : {"0", "a.b.0 + a.0", "rec X { X = a.X } | b.0", "(a.0 | 'a.0) \\ {a}"}) {
    Term p = ccs->parse(s);
    auto v = ep_bisim(ccs, p, p);
    ASSERT_TRUE(v.equivalent) << s;
    std::string why;
    EXPECT_TRUE(verify_witness(ccs, *v.witness, &why)) << why;
  }
}

TEST(Equivalence, LabelMismatch) {
  auto ccs = load_ccs();
  auto v = strong_bisim(*ccs, ccs->parse("a.0"), ccs->parse("b.0"));
  EXPECT_FALSE(v.equivalent);
  ASSERT_TRUE(v.evidence);
  EXPECT_EQ(v.evidence->clause, "1a");
}

TEST(Equivalence, ExplicitPrograms) {
  auto l = ExplicitLtss::from_json(kPrograms);
  std::size_t L = *l.find_state("L1"), R = *l.find_state("R1");
  EXPECT_TRUE(strong_bisim(l, L, R).equivalent);
  auto v = ep_bisim_on_lts(l, L, R);
  EXPECT_FALSE(v.equivalent);
  EXPECT_TRUE(ep_bisim_on_lts(l, R, R).equivalent);
  auto self = ep_bisim_on_lts(l, L, L);
  ASSERT_TRUE(self.equivalent);
  EXPECT_TRUE(verify_witness(l, *self.witness));
}

TEST(Equivalence, EmptyStates) {
  auto l = ExplicitLtss::from_json(R"({"states": ["a", "b"]})");
  auto v = ep_bisim_on_lts(l, 0, 1);
  ASSERT_TRUE(v.equivalent);
  EXPECT_TRUE(v.witness->triples[0].R.empty());
}

TEST(Equivalence, TamperedWitness) {
  auto ccs = load_ccs();
  Term p = ccs->parse("a.0 | b.0");
  auto v = ep_bisim(ccs, p, p);
  ASSERT_TRUE(v.equivalent);
  EpWitness w = *v.witness;
  std::swap(w.triples[0].R[0].second, w.triples[0].R[1].second);
  std::string why;
  EXPECT_FALSE(verify_witness(ccs, w, &why));
  EXPECT_NE(why.find("1c"), std::string::npos) << why;
  EpWitness back = EpWitness::from_json(v.witness->to_json());
  EXPECT_TRUE(verify_witness(ccs, back));
}

TEST(Equivalence, Malformed) {
  EXPECT_THROW(ExplicitLtss::from_json(R"({"states": ["a"], "transitions": [{"id": "t", "src": "a", "label": "x", "tgt": "b"}]})"),
               MalformedLtss);
  EXPECT_THROW(ExplicitLtss::from_json(R"({"states": ["a", "b"],
      "transitions": [{"id": "t", "src": "a", "label": "x", "tgt": "b"}],
      "successors": [["t", "t", "t"]]})"), MalformedLtss);
}
