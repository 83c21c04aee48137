#include <gtest/gtest.h>

#include "lamsec/surface.hpp"
#include "support/test_util.hpp"

namespace lamsec {
namespace {

using surface::TypeError;

const surface::Context kX{{"x", bool_t(kHigh)}};

void expect_error(const std::string& src, const std::string& rule, const std::string& premise,
                  GLabel gc = kLow) {
  try {
    test::typed(src, gc, kX);
    ADD_FAILURE() << "expected a type error for " << src;
  } catch (const TypeError& e) {
    EXPECT_EQ(e.rule(), rule) << src;
    EXPECT_EQ(e.premise(), premise) << src;
  }
}

TEST(Surface, Constants) {
  EXPECT_EQ(test::typed("(true @ high)").type, bool_t(kHigh));
  EXPECT_EQ(test::typed("(unit @ low)").type, unit_t(kLow));
}

TEST(Surface, FconstIsLow) {
  const auto t = test::typed(
      "(let f (lam [low] b : (Bool @ high) . (false @ low) @ low) (app f x ^p))", kLow, kX);
  EXPECT_EQ(t.type, bool_t(kLow));
}

TEST(Surface, IfStampsCondition) {
  EXPECT_EQ(test::typed("(if x (true @ low) (false @ low) ^p)", kLow, kX).type, bool_t(kHigh));
  const auto t = test::typed("(if (ann x : (Bool @ *) ^i) (true @ low) (false @ low) ^p)", kLow, kX);
  EXPECT_EQ(t.type, bool_t(kStar));
  EXPECT_EQ(t.children[1].gc, kStar);
}

TEST(Surface, Errors) {
  expect_error("(let f (lam [low] b : (Bool @ low) . b @ low) (app f x ^p))", "app", "A' ≲ A");
  expect_error("(ref low (true @ high) ^q)", "ref", "T_g ≲ T_ℓ");
  expect_error("(ann (true @ high) : (Bool @ low) ^q)", "ann", "A' ≲ A");
  expect_error("y", "var", "x : A ∈ Γ");
  expect_error("(if (unit @ low) x x ^p)", "if", "L : Bool_g");
  expect_error("(if (true @ low) (true @ low) (unit @ low) ^p)", "if", "A ∨̃ B = C");
  expect_error("(ref low (true @ low) ^q)", "ref", "gc ≲ ℓ", kHigh);
  expect_error("(! (true @ low))", "deref", "M : (Ref A)_g");
  expect_error("(:= (ref low (true @ low) ^a) x ^b)", "assign", "A ≲ T_ĝ");
  expect_error("(:= (ann (ref low (true @ low) ^a) : (Ref (Bool @ low) @ high) ^c) (true @ low) ^b)", "assign", "g ≲ ĝ");
  expect_error("(app (true @ low) x ^p)", "app", "L : (A ->[gc'] B)_g");
  expect_error("(app (lam [low] b : (Bool @ high) . b @ low) x ^p)", "app", "gc ≲ gc'", kHigh);
  expect_error("(app (if x (lam [low] b : (Bool @ high) . b @ low) (lam [low] b : (Bool @ high) . b @ low) ^i) x ^p)",
               "app", "g ≲ gc'");
}

TEST(Surface, LeastUpperBoundOfBranches) {
  const auto t = test::typed("(if (true @ low) (true @ low) (false @ high) ^p)");
  EXPECT_EQ(t.type, bool_t(kHigh));
}

TEST(Surface, DerivationRecordsStaticPc) {
  const auto t = test::typed("(if x (true @ low) (false @ low) ^p)", kLow, kX);
  ASSERT_EQ(t.children.size(), 3u);
  EXPECT_EQ(t.children[0].gc, GLabel(kLow));
  EXPECT_EQ(t.children[1].gc, GLabel(kHigh));
  EXPECT_TRUE(surface::recheck(kX, t));
}

TEST(Surface, EqualityIgnoresPositions) {
  const auto a = syntax::parse_program("(true @ low)");
  const auto b = syntax::parse_program("\n\n   (true @ low)");
  EXPECT_TRUE(surface::equal(a, b));
}

}  // namespace
}  // namespace lamsec
