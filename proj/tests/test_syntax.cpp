#include <gtest/gtest.h>

#include "epcalc/error.hpp"
#include "epcalc/syntax.hpp"

using namespace epcalc;

TEST(Syntax, ParsePrecedence) {
  Term t = parse_term("a.b.0 + c.0 | 'a.0");
  EXPECT_EQ(t.str(), "a.b.0 + c.0 | 'a.0");
  ASSERT_TRUE(t.is_op());
  EXPECT_EQ(t.oper().kind, OpKind::Choice);
  EXPECT_EQ(t.args()[1].oper().kind, OpKind::Parallel);
}

TEST(Syntax, RoundTrip) {
  for (const char* s : {"rec X { X = a.X + b.Y, Y = a.Y }", "(a.0 + b.0) | c.0 \\ {a}",
                        "(a.0[a->b]) ^ s", "a.0 ^ s \\ {a}", "(a.0 | b.0)[b->c]", "a.(b.0 + c.0)",
                        "a.0 + (b.0 + c.0)", "a.0 | (b.0 | c.0)"}) {
    Term t = parse_term(s);
    EXPECT_EQ(parse_term(t.str()), t) << s << " printed " << t.str();
  }
}

TEST(Syntax, AlphaEquivalence) {
  EXPECT_EQ(parse_term("rec X { X = a.X }"), parse_term("rec Y { Y = a.Y }"));
  EXPECT_NE(parse_term("rec X { X = a.X }"), parse_term("rec X { X = b.X }"));
  EXPECT_EQ(canonical_string(parse_term("rec X { X = a.X }")),
            canonical_string(parse_term("rec Z { Z = a.Z }")));
}

TEST(Syntax, FreeVarsAndCapture) {
  Term t = parse_term("rec X { X = a.x }");
  EXPECT_EQ(t.free_vars(), std::vector<std::string>{"x"});
  Term r = substitute(t, {{"x", parse_term("b.X")}});
  EXPECT_EQ(r.free_vars(), std::vector<std::string>{"X"});
  EXPECT_EQ(r, parse_term("rec Y { Y = a.b.X }"));
}

TEST(Syntax, Unfold) {
  Term p = parse_term("rec X { X = a.X + b.Y, Y = a.Y }");
  EXPECT_EQ(unfold(p), parse_term("a.(rec X { X = a.X + b.Y, Y = a.Y }) + b.(rec Y { X = a.X + b.Y, Y = a.Y })"));
}

TEST(Syntax, Errors) {
  EXPECT_THROW(parse_term("rec X { Y = a.Y }"), ParseError);
  EXPECT_THROW(parse_term("a.0 +"), ParseError);
  EXPECT_EQ(fresh_name("X", {"X", "X1"}), "X2");
}
