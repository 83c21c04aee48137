#include <gtest/gtest.h>

#include "lamsec/compile.hpp"
#include "lamsec/lattice.hpp"
#include "support/test_util.hpp"

namespace lamsec {
namespace {

using namespace cc;

const surface::Context kX{{"x", bool_t(kHigh)}};

const char* kFlip =
    "(let flip (lam [low] b : (Bool @ *) . (ann (if b (false @ low) (true @ low) ^r) : (Bool @ low) ^p) @ low)"
    " (app flip x ^q))";

TEST(Compile, FlipHasExactlyTwoCasts) {
  const Term m = test::compiled(kFlip, kLow, kX);
  const auto casts = test::nontrivial_casts(m);
  ASSERT_EQ(casts.size(), 2u);
  std::vector<std::string> shown;
  for (const auto& c : casts) shown.push_back(to_string(c));
  std::sort(shown.begin(), shown.end());
  EXPECT_EQ(shown[0], "Bool_* =>^p Bool_low");
  EXPECT_EQ(shown[1], "Bool_high =>^q Bool_*");
}

TEST(Compile, ConstantsAndLambdasAreUnchanged) {
  EXPECT_TRUE(equal(test::compiled("(true @ high)"), boolean(true, kHigh)));
  const Term l = test::compiled("(lam [low] b : (Bool @ low) . b @ high)");
  EXPECT_TRUE(equal(l, lam(kLow, "b", bool_t(kLow), var("b"), kHigh)));
}

TEST(Compile, HeapWriteModes) {
  const auto mode_of_ref = [](const Term& m) {
    std::optional<WriteMode> mode;
    test::walk(m, [&](const Term& n) {
      if (mode) return;
      if (const auto* r = as<Ref>(n)) mode = r->mode;
      if (const auto* a = as<Assign>(n)) mode = a->mode;
    });
    return mode;
  };
  EXPECT_EQ(mode_of_ref(test::compiled("(ref low (true @ low) ^a)")), WriteMode::static_);
  EXPECT_EQ(mode_of_ref(test::compiled("(ref high (true @ low) ^a)", kStar)), WriteMode::nsu);
  EXPECT_EQ(mode_of_ref(test::compiled("(:= (ref low (true @ low) ^a) (false @ low) ^b)")),
            WriteMode::static_);
  EXPECT_EQ(mode_of_ref(test::compiled(
                "(:= (ann (ref low (true @ low) ^a) : (Ref (Bool @ *) @ low) ^c) (false @ low) ^b)")),
            WriteMode::nsu);
}

TEST(Compile, RefCellAnnotation) {
  const Term m = test::compiled("(ref high (true @ low) ^a)");
  const auto* r = as<Ref>(m);
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->label, kHigh);
  EXPECT_TRUE(std::holds_alternative<BoolType>(r->cell));
}

TEST(Compile, IfCarriesBranchType) {
  const Term m = test::compiled("(if x (true @ low) (false @ high) ^p)", kLow, kX);
  const auto* i = as<If>(m);
  ASSERT_NE(i, nullptr);
  EXPECT_EQ(i->type, bool_t(kHigh));
}

// Compilation preserves types: the compiled term checks at the surface type
// or below, under both runtime pcs.
TEST(Compile, PreservesTypes) {
  const char* programs[] = {
      kFlip,
      "(let f (lam [low] b : (Bool @ high) . (false @ low) @ low) (app f x ^p))",
      "(let y (ref high (ann (true @ high) : (Bool @ *) ^a) ^r) (if x (:= y (false @ high) ^s) (unit @ low) ^t))",
      "(let g (ann (lam [low] b : (Bool @ low) . b @ low) : ((Bool @ low) -> [*] (Bool @ low) @ low) ^p)"
      " (app g (true @ low) ^s))",
      "(let r (ann (ref low (true @ low) ^a) : (Ref (Bool @ *) @ *) ^p) (:= r (false @ low) ^b))",
  };
  for (const char* src : programs) {
    for (GLabel gc : {GLabel(kLow), kStar}) {
      const auto t = test::typed(src, gc, kX);
      const Term m = compile(t);
      for (Label pc : {kLow, kHigh}) {
        const auto a = typecheck(kX, {}, gc, pc, m, CheckOptions{true});
        EXPECT_TRUE(below(a, t.type)) << src << " at pc " << to_string(pc);
      }
    }
  }
}

}  // namespace
}  // namespace lamsec
