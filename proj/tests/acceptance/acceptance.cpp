// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>

#include "oracles.hpp"
#include "resurgence/closures.hpp"
#include "resurgence/linear_program.hpp"
#include "resurgence/resurgence.hpp"

using namespace resurgence;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

bool near(const Rational& x, const Rational& target, const Rational& tol) { return abs(x - target) <= tol; }

MonomialIdeal xy_ideal() { return ideal_of(2, {{1, 0}, {0, 1}}); }

FamilyPtr sqrt_family(const MonomialIdeal& base) {
  TableTail tail;
  tail.kind = TableTail::Kind::Power;
  tail.ideal = base;
  tail.exponent.kind = ExponentFn::Kind::Sqrt;
  return GradedFamily::table(base.vars(), {}, tail);
}

// c1: ceiling pair over (x, y) with alpha = 2 and 3.
void ceiling_pair(Outcome& out) {
  const auto I = xy_ideal();
  auto a = GradedFamily::ceiling(I, 2), b = GradedFamily::ceiling(I, 3);
  const auto window = rho_window(*a, *b, 60, 60);
  const auto rees = rho_hat_rees(*a, *b);
  const auto exact = rho_exact_certified(*a, *b);
  const ExtendedRational target(Rational(3, 2));
  out.detail << "window(60,60)=" << window.value.to_string() << " rho_hat_rees=" << rees.value.to_string()
             << " rho_exact=" << exact.value.to_string() << (exact.certified ? " (certified)" : " (uncertified)");
  out.require(rees.value == target, "rho_hat_rees = 3/2");
  out.require(exact.value == target && exact.certified, "rho_exact = 3/2 certified");
  // a_s escapes b_r exactly when 2s < 3r, so no finite window attains 3/2.
  out.require(window.value == target, "window value = 3/2 (supremum is not attained on any finite window)");
}

// c2: a = powers(I), b_i = I^ceil(sqrt i).
void sqrt_family_check(Outcome& out) {
  const auto I = xy_ideal();
  auto a = GradedFamily::powers(I);
  auto b = sqrt_family(I);
  bool betas = true, rhos = true;
  for (std::int64_t s = 1; s <= 30; ++s) {
    betas = betas && beta(*a, *b, s, 10000) == SequenceValue::finite(s * s + 1);
    rhos = rhos && rho_n(*a, *b, s, 30, 10000).value == ExtendedRational(Rational(s, s * s + 1));
  }
  out.require(betas, "beta_s = s^2+1 for s <= 30");
  out.require(rhos, "rho^n = n/(n^2+1) for n <= 30");
  const auto window = rho_window(*a, *b, 30, 60);
  const bool at_12 = !window.witnesses.empty() && window.witnesses[0].s == 1 && window.witnesses[0].r == 2;
  out.require(window.value == ExtendedRational(Rational(1, 2)) && at_12, "window 1/2 at (1,2)");
  const auto trend = rho_n(*a, *b, 30, 30, 10000).value;
  out.require(trend.is_finite() && trend.value() <= Rational(1, 30), "rho^30 <= 1/30");
  out.detail << "beta_30=" << beta(*a, *b, 30, 10000).to_string() << " window=" << window.value.to_string()
             << " rho^30=" << trend.to_string();
}

// c3: b_n = (x^ceil(n/2)) + y (x,y)^ceil(n/2).
void rho_not_bar(Outcome& out) {
  const auto I = xy_ideal();
  auto a = GradedFamily::powers(I);
  Pattern p;
  p.residues = {{{PatternFactor::affine(ideal_of(2, {{1, 0}}), 1, 0, 2)},
                 {PatternFactor::constant(ideal_of(2, {{0, 1}})), PatternFactor::affine(I, 1, 0, 2)}}};
  auto b = GradedFamily::pattern(2, p);
  const auto window = rho_window(*a, *b, 30, 60);
  const bool at_11 = !window.witnesses.empty() && window.witnesses[0].s == 1 && window.witnesses[0].r == 1;
  out.require(window.value == ExtendedRational(Rational(1)) && at_11, "window 1 with witness a_1 not in b_1");
  const auto b200 = beta(*a, *b, 200, 1000);
  out.require(b200.is_finite(), "beta_200 finite");
  if (b200.is_finite()) {
    const Rational ratio(b200.value(), 200);
    out.require(near(ratio, 2, Rational(1, 20)), "beta_200/200 near 2");
    out.require(near(1 / ratio, Rational(1, 2), Rational(1, 20)), "rho_hat estimate near 1/2");
    out.detail << "beta_200=" << b200.value() << " ";
  }
  bool contained = true;
  for (std::int64_t s = 1; s <= 50; ++s) contained = contained && is_subset(a->member(s + 1), b->member(2 * s));
  out.require(contained, "a_{s+1} in b_{2s} for s <= 50");
  out.detail << "window=" << window.value.to_string();
}

// c4: period-3 families built from b1 = (x^3, y^3), b2 = (x^4, x^3y, xy^3, y^4), a2 = (x, y)^4.
void not_filtration(Outcome& out) {
  const auto I = xy_ideal();
  const auto b1 = ideal_of(2, {{3, 0}, {0, 3}});
  const auto b2 = ideal_of(2, {{4, 0}, {3, 1}, {1, 3}, {0, 4}});
  const auto a2 = power(I, 4);
  const auto a1 = b1;
  auto periodic = [](const MonomialIdeal& one, const MonomialIdeal& two) {
    Pattern p;
    p.period = 3;
    p.residues = {{{PatternFactor::constant(one), PatternFactor::constant(two)}},
                  {{PatternFactor::constant(one)}},
                  {{PatternFactor::constant(two)}}};
    return GradedFamily::pattern(2, p);
  };
  auto b = periodic(b1, b2), a = periodic(b1, a2);
  Pattern pp;
  pp.residues = {{{PatternFactor::member(b, 0)}, {PatternFactor::member(b, -2), PatternFactor::constant(a2)}}};
  auto bp = GradedFamily::pattern(2, pp);
  const auto x5y2 = monomial_of({5, 2});

  out.require(is_subset(power(b1, 2), b2) && is_subset(b2, b1), "(i)");
  out.require(same_ideal(b1, a1) && is_subset(b2, a2), "(ii)");
  out.require(multiply(b1, a2).contains(x5y2) && !multiply(b1, b2).contains(x5y2), "(iii)");
  out.require(same_ideal(power(a2, 2), multiply(b2, a2)) && same_ideal(power(a2, 2), power(I, 8)), "(iv)");
  out.require(is_subset(power(a1, 2), a2) && is_subset(power(a2, 2), a1), "(v)");

  bool graded = true;
  for (std::int64_t m = -3; m <= 15; ++m) {
    for (std::int64_t n = -3; n <= 15; ++n) {
      graded = graded && is_subset(multiply(b->member(m), b->member(n)), b->member(m + n));
      if (m >= 0 && n >= 0) graded = graded && is_subset(multiply(a->member(m), a->member(n)), a->member(m + n));
    }
  }
  out.require(graded, "(1) b_m b_n in b_{m+n} for -3 <= m, n <= 15, and a graded");
  out.require(same_ideal(bp->member(1), b1) && is_subset(b2, a2) && same_ideal(a2, bp->member(2)), "(2)");
  bool three = true;
  for (std::int64_t n = 1; n <= 45; ++n) {
    const auto lhs = bp->member(n);
    three = three && same_ideal(lhs, sum(b->member(n), multiply(b->member(n - 2), a2))) &&
            same_ideal(lhs, sum(b->member(n), multiply(b->member(n - 2), bp->member(2))));
  }
  out.require(three, "(3) for n <= 45");
  bool six = true;
  for (std::int64_t q = 1; q <= 15; ++q) {
    six = six && same_ideal(a->member(3 * q), multiply(b1, a2)) && same_ideal(bp->member(3 * q), multiply(b1, a2)) &&
          same_ideal(b->member(3 * q), multiply(b1, b2));
  }
  out.require(six, "(6) for indices <= 45");

  bool witness = true;
  for (std::int64_t q = 1; q <= 5; ++q) {
    for (std::int64_t n = 1; n <= 5; ++n) {
      witness = witness && a->member(3 * q * n).contains(x5y2) && !b->member(3 * n).contains(x5y2);
    }
  }
  out.require(witness, "x^5y^2 in a_{3qn} minus b_{3n} for q, n <= 5");

  const auto rho_ab = rho_window(*a, *b, 15, 15);
  out.require(rho_ab.value >= ExtendedRational(Rational(5)), "window rho(a, b) >= 5");
  const auto grid = rho_window(*GradedFamily::veronese(a, 3), *GradedFamily::veronese(bp, 3), 15, 15);
  out.require(grid.value == ExtendedRational::neg_inf(), "no escape on the 3Z grid for indices <= 45");
  out.detail << "window rho(a,b)=" << rho_ab.value.to_string() << " grid rho(a,b')=" << grid.value.to_string();
}

// Smallest c with 2^c >= n + 1.
std::int64_t ceil_log2_succ(std::int64_t n) {
  std::int64_t c = 0;
  while ((std::int64_t{1} << c) < n + 1) ++c;
  return c;
}

// c5: a = b = m^ceil(log2 n) in one variable.
void lambda_lim(Outcome& out) {
  TableTail tail;
  tail.kind = TableTail::Kind::Power;
  tail.ideal = ideal_of(1, {{1}});
  tail.exponent.kind = ExponentFn::Kind::Log2;
  auto f = GradedFamily::table(1, {}, tail);
  const auto v = degree_valuation(1);
  bool lambdas = true, betas = true;
  for (std::int64_t n = 1; n <= 1024; ++n) {
    const std::int64_t c = ceil_log2_succ(n);
    lambdas = lambdas && lambda_v(v, *f, *f, n, 4096) == SequenceValue::finite((std::int64_t{1} << (c - 1)) - 1);
    betas = betas && beta_v(v, *f, *f, n, 4096) == SequenceValue::finite(std::int64_t{1} << c);
  }
  out.require(lambdas, "lambda^v_n closed form for n <= 1024");
  out.require(betas, "beta^v_n closed form for n <= 1024");
  const std::int64_t lo = 1023, hi = 1024;
  auto ratio = [](const SequenceValue& x, std::int64_t n) { return Rational(x.value(), n); };
  const auto l_lo = ratio(lambda_v(v, *f, *f, lo, 4096), lo), l_hi = ratio(lambda_v(v, *f, *f, hi, 4096), hi);
  const auto b_lo = ratio(beta_v(v, *f, *f, lo, 4096), lo), b_hi = ratio(beta_v(v, *f, *f, hi, 4096), hi);
  const Rational tol(1, 100);
  out.require(near(l_lo, Rational(1, 2), tol) && near(l_hi, 1, tol), "lambda ratios near 1/2 and 1");
  out.require(near(b_lo, 1, tol) && near(b_hi, 2, tol), "beta ratios near 1 and 2");
  out.detail << "lambda/n at 1023,1024: " << l_lo.get_str() << ", " << l_hi.get_str() << "; beta/n: " << b_lo.get_str()
             << ", " << b_hi.get_str();
}

// c6: a = powers(I), b_n = I^n for n even and n I^n for n odd, with n = mI = I^2.
void strict_veronese(Outcome& out) {
  const auto I = xy_ideal();
  auto a = GradedFamily::powers(I);
  Pattern p;
  p.period = 2;
  p.residues = {{{PatternFactor::affine(I, 1, 0, 1)}},
                {{PatternFactor::constant(power(I, 2)), PatternFactor::affine(I, 1, 0, 1)}}};
  auto b = GradedFamily::pattern(2, p);
  bool nc = true;
  for (const auto& e : nc_table(*a, *b, 20, 60)) {
    nc = nc && e.beta == SequenceValue::finite(e.s % 2 ? e.s : e.s - 1);
  }
  out.require(nc, "NC set = {(s,s): s odd} u {(s,s-1): s even} for s <= 20");
  const auto whole = rho_window(*a, *b, 20, 20);
  out.require(whole.value == ExtendedRational(Rational(2)), "window rho(a, b) = 2");
  bool closed = true, strict = true;
  for (std::int64_t S = 5; S <= 20; ++S) {
    const auto vs = veronese_scaling_check(*a, b, 2, S, S);
    const std::int64_t r = (S + 1) / 2;
    closed = closed && vs.rho_powers == ExtendedRational(Rational(2 * r - 1, r));
    const auto base = rho_window(*a, *b, S, S).value;
    strict = strict && vs.rho_powers.is_finite() && base.is_finite() && vs.rho_powers.value() < 2 * base.value();
    if (S == 20) out.detail << "window rho(a, b_2^n) at S=20: " << vs.rho_powers.to_string() << " ";
  }
  out.require(closed, "window rho(a, b_2^n) = (2r-1)/r with r = floor((S+1)/2)");
  out.require(strict, "window rho(a, b_2^n) < 2 window rho(a, b) for 5 <= S <= 20");
  out.detail << "window rho(a,b)=" << whole.value.to_string();
}

// c7: closure, Rees valuations and the triangle value against an LP built here.
void rees_closure(Outcome& out) {
  const oracle::Gens gens{{2, 0}, {0, 3}};
  const auto expected = oracle::minimal_in_box(2, 6, [&](const oracle::Exps& m) {
    return oracle::closure_member_2d(gens, 1, m);
  });
  const auto closure = integral_closure(oracle::to_ideal(gens, 2));
  const auto got = oracle::sorted_exponents(closure.materialized());
  out.require(got == expected && expected == oracle::Gens{{0, 3}, {1, 2}, {2, 0}}, "closure of (x^2, y^3)");

  const auto triangle = ideal_of(3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  std::set<std::pair<std::string, std::string>> rv;
  for (const auto& r : rees_valuations(triangle).valuations) {
    std::string w;
    for (const auto& x : r.weights) w += x.get_str() + ",";
    rv.emplace(w, r.value.get_str());
  }
  const std::set<std::pair<std::string, std::string>> want{
      {"1,1,1,", "2"}, {"1,1,0,", "1"}, {"1,0,1,", "1"}, {"0,1,1,", "1"}};
  out.require(rv == want, "RV(triangle)");

  // v_hat of the symbolic triangle at (1,1,1): minimize x+y+z over the cover inequalities.
  LinearProgram lp;
  lp.objective = {1, 1, 1};
  for (const IntegerVector& n : {IntegerVector{1, 1, 0}, IntegerVector{1, 0, 1}, IntegerVector{0, 1, 1}}) {
    lp.constraints.emplace_back(n, Rational(1));
  }
  const auto result = lp_minimize(lp);
  const auto* opt = std::get_if<LpOptimum>(&result);
  out.require(opt && verify_certificate(lp, *opt) && opt->value == Rational(3, 2), "LP certificate 3/2");
  const auto m3 = ideal_of(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto rees = rho_hat_rees(*GradedFamily::symbolic(triangle), *GradedFamily::powers(m3));
  out.require(opt && rees.value == ExtendedRational(Rational(1) / opt->value) && rees.certified,
              "rho_hat_rees = 1 / LP value");
  out.detail << "closure gens=";
  for (const auto& g : got) out.detail << "(" << g[0] << "," << g[1] << ")";
  out.detail << " rho_hat_rees=" << rees.value.to_string();
}

// c8: the unit property suites.
void property_suites(Outcome& out) {
  const std::string filter =
      "FamilyProperty.*:ResurgenceProperty.*:ClosureProperty.PowerClosureSymbolicChain:"
      "ClosureProperty.BrianconSkoda:LpProperty.*:HullProperty.*";
  const std::string cmd = std::string("\"") + UNIT_TESTS_PATH + "\" --gtest_filter=" + filter + " > /dev/null";
  const int rc = std::system(cmd.c_str());
  out.require(rc == 0, "property suites");
  out.detail << "ran " << filter << " (1000 cases each), exit " << rc;
}

// c9: the three beta-type ratios at n = 100 for the triangle.
void beta_limits(Outcome& out) {
  const auto triangle = ideal_of(3, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  const auto m3 = ideal_of(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto rep = rho_hat_beta_limit(*GradedFamily::symbolic(triangle), *GradedFamily::powers(m3), 100, 10000);
  std::vector<Rational> ratios;
  for (const auto& p : rep.series) {
    if (p.index != 100 || !p.value.is_finite()) continue;
    ratios.push_back(1 / p.value.value());
    out.detail << p.tag << "_100/100=" << ratios.back().get_str() << " ";
  }
  out.require(ratios.size() == 3, "three series at n = 100");
  for (const auto& x : ratios) {
    out.require(near(x, Rational(3, 2), Rational(1, 20)), "near 3/2");
    for (const auto& y : ratios) out.require(near(x, y, Rational(1, 50)), "mutually within 0.02");
  }
}

// c10: a = powers((x^2, xy, y^3)), b = powers((x, y)).
void linearly_finer(Outcome& out) {
  const auto I = xy_ideal();
  const auto J = ideal_of(2, {{2, 0}, {1, 1}, {0, 3}});
  auto a = GradedFamily::powers(J), b = GradedFamily::powers(I);
  const auto rep = linearly_finer_check(*a, *b, 50, 40, 40);
  const std::int64_t l = containment_order(J, I);
  out.require(l >= 1, "order at least 1");
  const bool finite = rep.rho_star.is_finite();
  out.require(finite && rep.rho_star.value() >= Rational(1, l + 1) && rep.rho_star.value() <= Rational(1, l),
              "1/(l+1) <= rho <= 1/l");
  bool f_holds = rep.finer && rep.f.has_value();
  for (std::int64_t i = 1; f_holds && i <= 50; ++i) f_holds = is_subset(a->member((*rep.f)(i)), b->member(i));
  out.require(f_holds, "a_{f(i)} in b_i for i <= 50");
  out.detail << "window rho=" << rep.rho_star.to_string() << " l=" << l;
  if (rep.f) out.detail << " f(n)=" << rep.f->slope << "n+" << rep.f->intercept;
  if (finite && rep.rho_star.value() < Rational(1, 2)) out.detail << " (outside [1/2, 1], the l = 1 interval)";
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> checks{ceiling_pair,   sqrt_family_check, rho_not_bar,
                                                          not_filtration, lambda_lim,        strict_veronese,
                                                          rees_closure,   property_suites,   beta_limits,
                                                          linearly_finer};
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome out;
    try {
      checks[i](out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    failures += out.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << ": " << (out.pass ? "PASS" : "FAIL") << "  " << out.detail.str() << "\n";
  }
  return failures == 0 ? 0 : 1;
}
