#include <gtest/gtest.h>

#include "oracles.hpp"
#include "resurgence/errors.hpp"
#include "resurgence/monomial.hpp"

using namespace resurgence;

TEST(Monomial, MinimizeDropsMultiples) {
  auto g = minimize({monomial_of({2, 1}), monomial_of({1, 1}), monomial_of({0, 3}), monomial_of({1, 1})});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], monomial_of({0, 3}));
  EXPECT_EQ(g[1], monomial_of({1, 1}));
}

TEST(Monomial, ProductOfMaximalIdeal) {
  auto m = ideal_of(2, {{1, 0}, {0, 1}});
  EXPECT_TRUE(same_ideal(multiply(m, m), ideal_of(2, {{2, 0}, {1, 1}, {0, 2}})));
  EXPECT_EQ(power(m, 5).generators().size(), 6u);
}

TEST(Monomial, IntersectionUsesLcm) {
  auto a = ideal_of(2, {{2, 0}, {0, 1}});
  auto b = ideal_of(2, {{1, 1}});
  EXPECT_TRUE(same_ideal(intersect(a, b), ideal_of(2, {{2, 1}, {1, 1}})));
  EXPECT_TRUE(same_ideal(intersect(a, b), ideal_of(2, {{1, 1}})));
}

TEST(Monomial, ContainmentWitness) {
  auto a = ideal_of(2, {{2, 0}, {1, 1}, {0, 3}});
  auto m = ideal_of(2, {{1, 0}, {0, 1}});
  EXPECT_TRUE(is_subset(a, power(m, 2)));
  auto w = containment_witness(a, power(m, 3));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(a.contains(*w));
  EXPECT_FALSE(power(m, 3).contains(*w));
}

TEST(Monomial, ZeroAndUnit) {
  auto z = MonomialIdeal::zero(2), u = MonomialIdeal::unit(2);
  EXPECT_TRUE(is_subset(z, u));
  EXPECT_FALSE(is_subset(u, z));
  EXPECT_TRUE(multiply(z, u).is_zero());
  EXPECT_TRUE(power(ideal_of(2, {{1, 0}}), 0).is_unit());
}

TEST(Monomial, DimensionMismatchThrows) {
  EXPECT_THROW(multiply(ideal_of(2, {{1, 0}}), ideal_of(3, {{1, 0, 0}})), DimensionError);
}

TEST(Monomial, OverflowIsChecked) {
  EXPECT_THROW(checked_mul(std::int64_t{1} << 62, 4), OverflowError);
  EXPECT_THROW(checked_add(INT64_MAX, 1), OverflowError);
}

// Arithmetic against divisibility over a box: 1000 random pairs.
TEST(MonomialProperty, OperationsMatchBoxOracle) {
  oracle::IdealGen gen(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t vars = static_cast<std::size_t>(gen.uniform(1, 3));
    auto ga = gen.ideal(vars, 4, 4), gb = gen.ideal(vars, 4, 4);
    auto a = oracle::to_ideal(ga, vars), b = oracle::to_ideal(gb, vars);
    auto prod = multiply(a, b), cap = intersect(a, b), cup = sum(a, b);
    auto gp = oracle::product(ga, gb);
    oracle::for_box(vars, 8, [&](const oracle::Exps& e) {
      Monomial m(e);
      const bool in_a = oracle::member(ga, e), in_b = oracle::member(gb, e);
      ASSERT_EQ(a.contains(m), in_a);
      ASSERT_EQ(prod.contains(m), oracle::member(gp, e));
      ASSERT_EQ(cap.contains(m), in_a && in_b);
      ASSERT_EQ(cup.contains(m), in_a || in_b);
    });
    bool sub = true;
    for (const auto& g : ga) sub = sub && oracle::member(gb, g);
    ASSERT_EQ(is_subset(a, b), sub);
    // Minimal generators are pairwise incomparable.
    for (const auto& g : prod.generators()) {
      for (const auto& h : prod.generators()) ASSERT_TRUE(g == h || !g.divides(h));
    }
  }
}
