#include <gtest/gtest.h>

#include "lamsec/heap.hpp"

namespace lamsec {
namespace {

using namespace cc;

TEST(Heap, FreshUsesHalfLength) {
  Heap mu;
  EXPECT_EQ(fresh(mu, kLow), (Address{0, kLow}));
  mu = extend(mu, {0, kLow}, boolean(true, kLow));
  EXPECT_EQ(fresh(mu, kLow), (Address{1, kLow}));
  EXPECT_EQ(fresh(mu, kHigh), (Address{0, kHigh}));
}

TEST(Heap, NewestBindingWins) {
  Heap mu;
  mu = extend(mu, {0, kLow}, boolean(true, kLow));
  mu = extend(mu, {0, kLow}, boolean(false, kLow));
  auto v = lookup(mu, {0, kLow});
  ASSERT_TRUE(v.has_value());
  EXPECT_TRUE(equal(*v, boolean(false, kLow)));
  EXPECT_EQ(to_string(mu), "low:[0=false_low, 0=true_low] high:[]");
  EXPECT_FALSE(lookup(mu, {0, kHigh}).has_value());
}

TEST(Heap, HalvesAreSeparate) {
  Heap mu;
  mu = extend(mu, {0, kHigh}, unit(kHigh));
  EXPECT_TRUE(mu.low.empty());
  EXPECT_EQ(mu.high.size(), 1u);
  Heap other = mu;
  EXPECT_TRUE(equal(mu, other));
  other = extend(other, {0, kHigh}, unit(kLow));
  EXPECT_FALSE(equal(mu, other));
}

TEST(Heap, Typing) {
  HeapContext sigma;
  sigma.extend({0, kLow}, BoolType{});
  Heap mu;
  EXPECT_FALSE(heap_typed(sigma, mu));
  mu = extend(mu, {0, kLow}, boolean(true, kLow));
  EXPECT_TRUE(heap_typed(sigma, mu));
  Heap bad = extend(Heap{}, {0, kLow}, boolean(true, kHigh));
  EXPECT_FALSE(heap_typed(sigma, bad));
  Heap wrong = extend(Heap{}, {0, kLow}, unit(kLow));
  EXPECT_FALSE(heap_typed(sigma, wrong));
}

}  // namespace
}  // namespace lamsec
