#include <gtest/gtest.h>

#include "lamsec/syntax.hpp"

namespace lamsec {
namespace {

using syntax::ParseError;
using syntax::parse_program;
using syntax::parse_type;
using syntax::print;

TEST(Syntax, Types) {
  EXPECT_EQ(parse_type("(Bool @ *)"), bool_t(kStar));
  EXPECT_EQ(parse_type("(Ref (Unit @ high) @ low)"), ref_t(unit_t(kHigh), kLow));
  EXPECT_EQ(parse_type("((Bool @ low) -> [*] (Bool @ high) @ high)"),
            fun_t(bool_t(kLow), kStar, bool_t(kHigh), kHigh));
  EXPECT_EQ(print(parse_type("(Ref (Bool @ *) @ low)")), "(Ref (Bool @ *) @ low)");
}

TEST(Syntax, DefaultsAreExplicitAfterPrinting) {
  const auto t = parse_program("(app (lam [low] b : (Bool @ low) . b) (true))");
  const std::string printed = print(t);
  EXPECT_NE(printed.find("@ low"), std::string::npos);
  EXPECT_NE(printed.find("^p1:1"), std::string::npos);
}

TEST(Syntax, RoundTrip) {
  const char* programs[] = {
      "(let f (lam [high] b : (Bool @ *) . (if b (false @ low) (true @ high) ^r) @ low) (app f (true @ high) ^q))",
      "(let r (ref high (unit @ low) ^a) (:= r (! r) ^b))",
      "(ann x : ((Bool @ low) -> [*] (Ref (Bool @ high) @ *) @ high) ^p:q)",
  };
  for (const char* src : programs) {
    const auto t = parse_program(src);
    const std::string once = print(t);
    EXPECT_TRUE(surface::equal(parse_program(once), t)) << once;
    EXPECT_EQ(print(parse_program(once)), once);
  }
}

TEST(Syntax, CommentsAndWhitespace) {
  const auto t = parse_program("; a comment\n  (true @ high) ; trailing\n");
  EXPECT_EQ(print(t), "(true @ high)");
}

TEST(Syntax, Errors) {
  EXPECT_THROW(parse_program("(true @ low"), ParseError);
  EXPECT_THROW(parse_program("(true @ low) extra"), ParseError);
  EXPECT_THROW(parse_program("(lam [*] b : (Bool @ low) . b)"), ParseError);
  EXPECT_THROW(parse_program("(let if (true @ low) if)"), ParseError);
  EXPECT_THROW(parse_type("(Int @ low)"), ParseError);
  try {
    parse_program("\n  (app)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos().line, 2);
  }
}

}  // namespace
}  // namespace lamsec
