#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "resurgence/closures.hpp"

using namespace resurgence;

TEST(Closure, TwoPowersGainsMixedTerm) {
  MonomialIdeal c = integral_closure(ideal_of(2, {{2, 0}, {0, 3}}));
  EXPECT_EQ(oracle::sorted_exponents(c.materialized()), (oracle::Gens{{0, 3}, {1, 2}, {2, 0}}));
}

TEST(Closure, MaximalIdealIsNormal) {
  EXPECT_TRUE(is_normal(ideal_of(2, {{1, 0}, {0, 1}})));
  EXPECT_FALSE(is_normal(ideal_of(2, {{2, 0}, {0, 3}})));
  EXPECT_TRUE(is_integrally_closed(ideal_of(2, {{2, 0}, {1, 2}, {0, 3}})));
}

TEST(Closure, ReesValuationsOfTriangle) {
  auto rv = rees_valuations(ideal_of(3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
  std::set<std::vector<long>> got;
  for (const auto& v : rv.valuations) {
    std::vector<long> row;
    for (const auto& w : v.weights) row.push_back(w.get_si());
    row.push_back(v.value.get_si());
    got.insert(row);
  }
  std::set<std::vector<long>> want{{1, 1, 1, 2}, {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}};
  EXPECT_EQ(got, want);
}

TEST(Closure, SymbolicSquareOfTriangle) {
  auto t = ideal_of(3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  auto s = symbolic_power(t, 2);
  EXPECT_TRUE(s.contains(monomial_of({1, 1, 1})));
  EXPECT_FALSE(power(t, 2).contains(monomial_of({1, 1, 1})));
  EXPECT_TRUE(same_ideal(s, symbolic_power_by_intersection(t, 2)));
}

TEST(Closure, VertexCoversOfPath) {
  auto covers = minimal_vertex_covers(ideal_of(3, {{1, 1, 0}, {0, 1, 1}}));
  std::set<std::vector<std::size_t>> got(covers.begin(), covers.end());
  EXPECT_EQ(got, (std::set<std::vector<std::size_t>>{{1}, {0, 2}}));
}

TEST(Closure, BequivConstants) {
  auto b = bequiv_constant(PowerFamilyKind::ClosurePowers, ideal_of(2, {{2, 0}, {0, 3}}));
  EXPECT_EQ(b.certified, 1);
  EXPECT_EQ(bequiv_constant(PowerFamilyKind::Powers, ideal_of(2, {{2, 0}, {0, 3}})).certified, 0);
  EXPECT_EQ(bequiv_constant(PowerFamilyKind::ClosurePowers, ideal_of(2, {{1, 0}, {0, 1}})).tightened, 0);
}

// Closures of powers in two variables against the segment oracle.
TEST(ClosureProperty, MatchesSegmentOracle) {
  oracle::IdealGen gen(41);
  for (int trial = 0; trial < 1000; ++trial) {
    auto g = gen.ideal(2, 4, 4);
    const std::int64_t n = gen.uniform(1, 3);
    MonomialIdeal c = integral_closure(oracle::to_ideal(g, 2), n);
    std::int64_t bound = 0;
    for (const auto& e : g) bound = std::max({bound, e[0] * n, e[1] * n});
    auto want = oracle::minimal_in_box(2, bound, [&](const oracle::Exps& e) {
      return oracle::closure_member_2d(g, n, e);
    });
    ASSERT_EQ(oracle::sorted_exponents(c.materialized()), want);
  }
}

// I^n inside closure(I^n) inside I^(n) for squarefree I, n <= 4; and the
// symbolic power agrees with the cover oracle.
TEST(ClosureProperty, PowerClosureSymbolicChain) {
  oracle::IdealGen gen(43);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t vars = static_cast<std::size_t>(gen.uniform(2, 3));
    auto g = gen.squarefree(vars, 3);
    auto I = oracle::to_ideal(g, vars);
    const std::int64_t n = gen.uniform(1, 4);
    auto p = power(I, n);
    auto c = integral_closure(I, n);
    auto s = symbolic_power(I, n);
    ASSERT_TRUE(is_subset(p, c));
    ASSERT_TRUE(is_subset(c, s));
    auto want = oracle::minimal_in_box(vars, n, [&](const oracle::Exps& e) {
      return oracle::symbolic_member(g, vars, n, e);
    });
    ASSERT_EQ(oracle::sorted_exponents(s.materialized()), want);
  }
}

// closure(I^{n+vars-1}) inside I^n, n <= 5.
TEST(ClosureProperty, BrianconSkoda) {
  oracle::IdealGen gen(47);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t vars = static_cast<std::size_t>(gen.uniform(1, 3));
    auto g = gen.ideal(vars, 3, 3);
    auto I = oracle::to_ideal(g, vars);
    const std::int64_t n = gen.uniform(1, 5);
    auto c = integral_closure(I, n + static_cast<std::int64_t>(vars) - 1);
    auto target = oracle::power(g, static_cast<int>(n), vars);
    for (const auto& m : c.materialized()) {
      oracle::Exps e(m.exponents().begin(), m.exponents().end());
      ASSERT_TRUE(oracle::member(target, e));
    }
  }
}
