#include <gtest/gtest.h>

#include <random>

#include "lamsec/lattice.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

namespace lamsec {
namespace {

using test::glabels;
using test::types_up_to;

const std::vector<Type>& small_types() {
  static const std::vector<Type> all = types_up_to(2);
  return all;
}

TEST(Label, ConcreteOrder) {
  EXPECT_TRUE(leq(kLow, kHigh));
  EXPECT_FALSE(leq(kHigh, kLow));
  EXPECT_EQ(join(kLow, kHigh), kHigh);
  EXPECT_EQ(meet(kLow, kHigh), kLow);
}

TEST(Label, GradualPredicates) {
  EXPECT_TRUE(subtype(GLabel(kLow), GLabel(kHigh)));
  EXPECT_FALSE(subtype(GLabel(kLow), kStar));
  EXPECT_TRUE(subtype(kStar, kStar));
  EXPECT_TRUE(consistent(kStar, GLabel(kHigh)));
  EXPECT_FALSE(consistent(GLabel(kLow), GLabel(kHigh)));
  EXPECT_TRUE(cons_subtype(kStar, GLabel(kLow)));
  EXPECT_TRUE(cons_subtype(GLabel(kHigh), kStar));
  EXPECT_FALSE(cons_subtype(GLabel(kHigh), GLabel(kLow)));
}

TEST(Label, Operators) {
  EXPECT_EQ(cons_join(GLabel(kLow), kStar), kStar);
  EXPECT_EQ(cons_join(GLabel(kHigh), kStar), kStar);
  EXPECT_EQ(cons_join(GLabel(kLow), GLabel(kHigh)), GLabel(kHigh));
  EXPECT_EQ(cons_meet(GLabel(kLow), kStar), kStar);
  EXPECT_EQ(cons_meet(GLabel(kLow), GLabel(kHigh)), GLabel(kLow));
  EXPECT_EQ(cons_meet(GLabel(kHigh), kStar), kStar);
  EXPECT_EQ(gradual_meet(kStar, GLabel(kHigh)), GLabel(kHigh));
  EXPECT_EQ(gradual_meet(GLabel(kLow), GLabel(kHigh)), std::nullopt);
  EXPECT_EQ(merge(GLabel(kLow), kStar), kStar);
  EXPECT_EQ(merge(kStar, GLabel(kHigh)), GLabel(kHigh));
  EXPECT_THROW(merge(GLabel(kHigh), GLabel(kLow)), LatticeError);
}

TEST(Type, Examples) {
  const Type fun = fun_t(bool_t(kHigh), kLow, bool_t(kLow), kLow);
  const Type fun_star = fun_t(bool_t(kStar), kLow, bool_t(kLow), kLow);
  EXPECT_TRUE(subtype(fun, fun_t(bool_t(kHigh), kLow, bool_t(kHigh), kHigh)));
  EXPECT_FALSE(subtype(ref_t(bool_t(kLow), kLow), ref_t(bool_t(kHigh), kLow)));
  EXPECT_TRUE(cons_subtype(ref_t(bool_t(kLow), kLow), ref_t(bool_t(kStar), kLow)));
  EXPECT_TRUE(cons_subtype(fun, fun_star));
  EXPECT_FALSE(consistent(bool_t(kLow), unit_t(kLow)));
  EXPECT_EQ(cons_join(bool_t(kLow), unit_t(kLow)), std::nullopt);
  EXPECT_EQ(stamp_type(bool_t(kLow), kStar), bool_t(kStar));
  EXPECT_EQ(to_string(fun), "(Bool_high ->[low] Bool_low)_low");
}

TEST(TypeSpace, Size) { EXPECT_EQ(small_types().size(), 6u + 3 * (6 + 6 * 3 * 6)); }

TEST(Oracle, Reflexivity) {
  for (const Type& a : small_types()) {
    EXPECT_TRUE(subtype(a, a)) << to_string(a);
    EXPECT_TRUE(consistent(a, a)) << to_string(a);
    EXPECT_TRUE(cons_subtype(a, a)) << to_string(a);
  }
}

// Exhaustive pairwise laws. Failures are counted rather than reported one by
// one so a broken operator does not flood the log.
TEST(Oracle, PairwiseLaws) {
  int merge_bad = 0, dual_bad = 0, join_bad = 0, meet_bad = 0, sub_bad = 0, sym_bad = 0;
  long pairs = 0, related = 0;
  for (const Type& a : small_types()) {
    for (const Type& b : small_types()) {
      ++pairs;
      if (subtype(a, b) && !cons_subtype(a, b)) ++sub_bad;
      if (consistent(a, b) != consistent(b, a)) ++sym_bad;
      if (cons_subtype(a, b)) {
        ++related;
        const Type m = merge(a, b);
        if (!consistent(a, m) || !subtype(m, b)) ++merge_bad;
        const Type d = merge_dual(a, b);
        if (!subtype(a, d) || !consistent(d, b)) ++dual_bad;
      }
      if (auto j = cons_join(a, b)) {
        if (!cons_subtype(a, *j) || !cons_subtype(b, *j)) ++join_bad;
      }
      if (auto m = cons_meet(a, b)) {
        if (!cons_subtype(*m, a) || !cons_subtype(*m, b)) ++meet_bad;
      }
    }
  }
  EXPECT_GT(related, 0);
  EXPECT_EQ(pairs, static_cast<long>(small_types().size() * small_types().size()));
  EXPECT_EQ(merge_bad, 0);
  EXPECT_EQ(dual_bad, 0);
  EXPECT_EQ(join_bad, 0);
  EXPECT_EQ(meet_bad, 0);
  EXPECT_EQ(sub_bad, 0);
  EXPECT_EQ(sym_bad, 0);
}

TEST(Oracle, LabelLawsExhaustive) {
  for (GLabel a : glabels()) {
    for (GLabel b : glabels()) {
      if (cons_subtype(a, b)) {
        EXPECT_TRUE(consistent(a, merge(a, b)) && subtype(merge(a, b), b));
        EXPECT_TRUE(subtype(a, merge_dual(a, b)) && consistent(merge_dual(a, b), b));
      }
      EXPECT_TRUE(cons_subtype(a, cons_join(a, b)));
      EXPECT_TRUE(cons_subtype(b, cons_join(a, b)));
      EXPECT_TRUE(cons_subtype(cons_meet(a, b), a));
      EXPECT_TRUE(cons_subtype(cons_meet(a, b), b));
      EXPECT_EQ(cons_join(a, b), cons_join(b, a));
      EXPECT_EQ(cons_meet(a, b), cons_meet(b, a));
    }
  }
}

TEST(Oracle, StampIsJoin) {
  for (const Type& a : small_types())
    for (GLabel g : glabels()) {
      const Type s = stamp_type(a, g);
      EXPECT_EQ(s.raw, a.raw);
      EXPECT_EQ(s.label, cons_join(a.label, g));
      EXPECT_EQ(stamp_type(s, g), s);
    }
}

// Deeper types are sampled: random pairs sharing one skeleton, so most pairs
// are related and the merge laws are exercised.
Type random_shape(int depth, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, depth > 1 ? 3 : 1);
  switch (pick(rng)) {
    case 0:
      return unit_t(kLow);
    case 1:
      return bool_t(kLow);
    case 2:
      return ref_t(random_shape(depth - 1, rng), kLow);
    default:
      return fun_t(random_shape(depth - 1, rng), kLow, random_shape(depth - 1, rng), kLow);
  }
}

Type random_like(const Type& shape, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  const GLabel g = glabels()[pick(rng)];
  return std::visit(
      [&](const auto& r) -> Type {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, RefType>) {
          return ref_t(random_like(*r.inner, rng), g);
        } else if constexpr (std::is_same_v<R, FunType>) {
          const GLabel pc = glabels()[pick(rng)];
          return fun_t(random_like(*r.dom, rng), pc, random_like(*r.cod, rng), g);
        } else {
          return Type{r, g};
        }
      },
      shape.raw);
}

TEST(Oracle, SampledDeepMerge) {
  std::mt19937 rng(20240601);
  int bad = 0, related = 0;
  for (int i = 0; i < 20000; ++i) {
    const Type shape = random_shape(4, rng);
    const Type a = random_like(shape, rng);
    const Type b = random_like(shape, rng);
    if (!cons_subtype(a, b)) continue;
    ++related;
    const Type m = merge(a, b);
    const Type d = merge_dual(a, b);
    if (!consistent(a, m) || !subtype(m, b) || !subtype(a, d) || !consistent(d, b)) ++bad;
  }
  EXPECT_GT(related, 1000);
  EXPECT_EQ(bad, 0);
}

TEST(Oracle, SharedSuite) {
  const auto rep = test::run_lattice_oracles();
  EXPECT_GT(rep.casts, 0);
  EXPECT_TRUE(rep.failures.empty()) << rep.failures.front();
}

}  // namespace
}  // namespace lamsec
