#include <gtest/gtest.h>

#include "lamsec/bigstep.hpp"
#include "lamsec/erasure.hpp"
#include "support/test_util.hpp"

namespace lamsec {
namespace {

using namespace cc;
using erasure::erase;
using erasure::eval_erased;

TEST(Erase, Terms) {
  EXPECT_TRUE(equal(erase(boolean(true, kHigh)), opaque()));
  EXPECT_TRUE(equal(erase(boolean(true, kLow)), boolean(true, kLow)));
  EXPECT_TRUE(equal(erase(addr({0, kHigh}, kLow)), opaque()));
  EXPECT_TRUE(equal(erase(addr({0, kLow}, kHigh)), opaque()));
  EXPECT_TRUE(equal(erase(addr({0, kLow}, kLow)), addr({0, kLow}, kLow)));
  EXPECT_TRUE(equal(erase(prot(kHigh, var("m"))), opaque()));
  EXPECT_TRUE(equal(erase(blame("p")), opaque()));
  EXPECT_TRUE(equal(erase(cast(boolean(true, kLow), test::cast("(Bool @ low)", "(Bool @ *)"))),
                    boolean(true, kLow)));
  EXPECT_TRUE(equal(erase(cast_pc(kStar, var("m"))), var("m")));
  EXPECT_TRUE(equal(erase(lam(kLow, "y", bool_t(kLow), var("y"), kHigh)), opaque()));
}

TEST(Erase, HeapKeepsLowHalfOnly) {
  Heap mu;
  mu = extend(mu, {0, kLow}, boolean(true, kHigh));
  mu = extend(mu, {0, kHigh}, boolean(true, kHigh));
  const HalfHeap h = erase(mu);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_TRUE(equal(h[0].second, opaque()));
}

// The counterexample to a naive simulation: a low reference to a high cell.
// With a split heap the erased run allocates nothing visible for it.
TEST(Erase, HighAllocationLeavesNoImage) {
  const Term m = ref(WriteMode::static_, kHigh, BoolType{}, boolean(true, kHigh));
  auto full = big::eval_big({}, kLow, m);
  ASSERT_TRUE(full.outcome.is_value());
  auto er = eval_erased({}, kLow, erase(m));
  ASSERT_TRUE(er.outcome.is_value());
  EXPECT_TRUE(er.outcome.heap.low.empty());
  EXPECT_TRUE(equal(erase(full.outcome.value), er.outcome.value));
}

TEST(Erased, OpaqueEliminations) {
  Coverage cov;
  EXPECT_TRUE(equal(eval_erased({}, kLow, app(opaque(), boolean(true, kLow)), 100, &cov).outcome.value,
                    opaque()));
  EXPECT_TRUE(equal(
      eval_erased({}, kLow, if_(opaque(), bool_t(kLow), boolean(true, kLow), boolean(false, kLow)), 100, &cov)
          .outcome.value,
      opaque()));
  EXPECT_TRUE(equal(eval_erased({}, kLow, deref(opaque()), 100, &cov).outcome.value, opaque()));
  EXPECT_TRUE(cov.fired(Rule::erased_app_opaque));
  EXPECT_TRUE(cov.fired(Rule::erased_if_opaque));
  EXPECT_TRUE(cov.fired(Rule::erased_deref_opaque));
}

TEST(Erased, LowWriteAndRead) {
  const Term m = let("r", ref(WriteMode::static_, kLow, BoolType{}, boolean(true, kLow)),
                     let("u", assign(WriteMode::static_, var("r"), boolean(false, kLow)), deref(var("r"))));
  auto r = eval_erased({}, kLow, m);
  EXPECT_EQ(describe(r.outcome), "value false_low");
  EXPECT_EQ(r.ambiguous, 0);
  EXPECT_EQ(r.outcome.heap.low.size(), 2u);
}

TEST(Erased, Deterministic) {
  const Term m = let("r", ref(WriteMode::nsu, kHigh, BoolType{}, opaque()),
                     assign(WriteMode::nsu, var("r"), opaque()));
  auto a = eval_erased({}, kLow, m);
  auto b = eval_erased({}, kLow, m);
  EXPECT_EQ(describe(a.outcome), describe(b.outcome));
  EXPECT_TRUE(equal(a.outcome.heap.low, b.outcome.heap.low));
  EXPECT_EQ(a.ambiguous, 0);
}

}  // namespace
}  // namespace lamsec
