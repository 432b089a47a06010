#include <gtest/gtest.h>

#include "epcalc/error.hpp"
#include "epcalc/languages.hpp"

using namespace epcalc;

TEST(Tss, CcsIsDeSimone) {
  auto ccs = load_ccs();
  auto ds = ccs->check_de_simone();
  for (const auto& d : ds) ADD_FAILURE() << d.str();
  EXPECT_TRUE(ds.empty());
}

TEST(Tss, CcsRuleNames) {
  auto ccs = load_ccs();
  const auto& acts = ccs->rules_for(Operator::prefix("a"));
  ASSERT_EQ(acts.size(), 1u);
  EXPECT_EQ(acts[0].name.str(), "act_a");
  const auto& par = ccs->rules_for(Operator::parallel());
  std::set<std::string> names;
  for (const auto& r : par) names.insert(r.name.str());
  EXPECT_EQ(names, (std::set<std::string>{"parC", "parL", "parR"}));
  const auto& res = ccs->rules_for(Operator::restrict({"a", "b"}));
  ASSERT_FALSE(res.empty());
  EXPECT_EQ(res[0].name.str(), "restr_{a,b}");
  // c, 'c and tau remain
  EXPECT_EQ(res.size(), 3u);
}

TEST(Tss, TriggerSets) {
  auto ccs = load_ccs();
  EXPECT_EQ(ccs->family("parC")->trigger_set, (std::vector<int>{0, 1}));
  EXPECT_EQ(ccs->family("plusR")->trigger_set, (std::vector<int>{1}));
  EXPECT_TRUE(ccs->family("act")->trigger_set.empty());
}

TEST(Tss, AbcdeOverlap) {
  EXPECT_THROW(load_abcde({"a"}, {"a"}, {"s"}), Error);
}

TEST(Tss, AbcdeIsDeSimone) {
  auto abc = load_abcde();
  auto ds = abc->check_de_simone();
  for (const auto& d : ds) ADD_FAILURE() << d.str();
  EXPECT_EQ(abc->family("plusC")->trigger_set, (std::vector<int>{0, 1}));
  EXPECT_EQ(abc->family("parL")->trigger_set, (std::vector<int>{0}));
  EXPECT_TRUE(abc->family("sigS")->trigger_set.empty());
  const auto& par = abc->rules_for(Operator::parallel());
  int bang = 0;
  for (const auto& r : par)
    if (r.label == "b!") ++bang;
  // !?, ?!, !:, :!
  EXPECT_EQ(bang, 4);
}
