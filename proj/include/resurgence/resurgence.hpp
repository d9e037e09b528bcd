#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resurgence/extended.hpp"
#include "resurgence/family.hpp"
#include "resurgence/valuation.hpp"

namespace resurgence {

enum class Quantity { RhoWindow, RhoExact, RhoHatRees, RhoHatBeta, RhoN, RhoLim, WaldschmidtRatio };

std::string to_string(Quantity q);

struct Witness {
  std::int64_t s = 0;
  std::int64_t r = 0;
  Monomial monomial;  // in a_s, not in b_r
};

struct Hypothesis {
  std::string name;
  CertificateKind status = CertificateKind::Window;
  std::size_t horizon = 0;
  std::string note;
};

struct SearchParams {
  std::int64_t s_max = 0;
  std::int64_t r_max = 0;
  std::int64_t cutoff = 0;
  std::int64_t horizon = 0;
  std::int64_t kmax = 0;
  std::int64_t window = 0;
};

struct SeriesPoint {
  std::int64_t index = 0;
  ExtendedRational value;
  std::string tag;
};

struct ResurgenceReport {
  Quantity quantity = Quantity::RhoWindow;
  ExtendedRational value;
  bool certified = false;
  std::vector<Witness> witnesses;
  std::vector<Hypothesis> hypotheses;
  SearchParams search;
  std::vector<std::string> labels;
  std::vector<std::string> notes;
  std::vector<std::string> assertions_used;
  std::optional<MonomialValuation> maximizer;
  std::vector<SeriesPoint> series;
};

/// User-asserted hypotheses, echoed into every report that relies on them.
struct Assertions {
  bool finite_generation = false;            // R(closure of b) is module-finite over R(b)
  std::optional<std::int64_t> b_veronese;    // b_{kn} = b_k^n for all n
  std::optional<Rational> rho_hat;           // rho_hat(a, closure of b)
  bool valuation_equality = false;           // v_hat(b) = v(b_1) on RV(b_1)
  std::optional<std::int64_t> closure_gap;   // closure(b_{i+k}) inside b_i
  bool a_filtration = false;
  bool b_filtration = false;

  friend bool operator==(const Assertions&, const Assertions&) = default;
};

struct SearchOptions {
  std::int64_t window = 12;   // prefix used by Waldschmidt window estimates
  std::int64_t horizon = 6;   // validation horizon
  std::int64_t kmax = 6;      // largest Veronese index searched
  std::int64_t budget = 30;   // witness search: s + r <= budget
};

enum class Search { Auto, Binary, Linear };

/// inf { d >= 1 : a_s not inside b_d }.
SequenceValue beta(const GradedFamily& a, const GradedFamily& b, std::int64_t s, std::int64_t cutoff,
                   Search mode = Search::Auto);

/// sup { d >= 1 : a_d not inside b_n }.
SequenceValue lambda(const GradedFamily& a, const GradedFamily& b, std::int64_t n, std::int64_t cutoff,
                     Search mode = Search::Auto);

/// inf { d >= 1 : v(a_n) < v(b_d) }.
SequenceValue beta_v(const MonomialValuation& v, const GradedFamily& a, const GradedFamily& b, std::int64_t n,
                     std::int64_t cutoff, Search mode = Search::Auto);

/// sup { d >= 0 : v(a_d) < v(b_n) }, with v(a_0) = 0.
SequenceValue lambda_v(const MonomialValuation& v, const GradedFamily& a, const GradedFamily& b,
                       std::int64_t n, std::int64_t cutoff, Search mode = Search::Auto);

/// A finite stretch alpha_start, alpha_{start+1}, ... of an integer sequence.
struct IntegerWindow {
  std::int64_t start = 1;
  std::vector<Integer> values;
  bool nondecreasing = false;  // promise about the unseen tail
};

struct DualSequences {
  std::int64_t start = 1;
  std::vector<SequenceValue> left;   // inf { d : alpha_d >= beta_n }
  std::vector<SequenceValue> right;  // sup { d : alpha_d <= beta_n }
};

/// Entries the windows cannot decide are ExceedsBound(last alpha index).
DualSequences dual_sequences(const IntegerWindow& alpha, const IntegerWindow& beta);

struct NcEntry {
  std::int64_t s = 0;
  SequenceValue beta = SequenceValue::empty();
  std::optional<Monomial> witness;
};

/// (s, beta_s) for s <= s_max.
std::vector<NcEntry> nc_table(const GradedFamily& a, const GradedFamily& b, std::int64_t s_max,
                              std::int64_t cutoff, Search mode = Search::Auto);

ResurgenceReport rho_window(const GradedFamily& a, const GradedFamily& b, std::int64_t s_max, std::int64_t r_max,
                            Search mode = Search::Auto);

ResurgenceReport rho_n(const GradedFamily& a, const GradedFamily& b, std::int64_t n, std::int64_t s_max,
                       std::int64_t cutoff, Search mode = Search::Auto);

ResurgenceReport rho_lim_estimate(const GradedFamily& a, const GradedFamily& b,
                                  const std::vector<std::int64_t>& grid, std::int64_t s_max, std::int64_t cutoff,
                                  const SearchOptions& options = {}, const Assertions& assertions = {});

ResurgenceReport rho_hat_rees(const GradedFamily& a, const GradedFamily& b, const SearchOptions& options = {},
                              const Assertions& assertions = {});

ResurgenceReport rho_hat_beta_limit(const GradedFamily& a, const GradedFamily& b, std::int64_t n,
                                    std::int64_t cutoff, const SearchOptions& options = {},
                                    const Assertions& assertions = {});

ResurgenceReport rho_exact_certified(const GradedFamily& a, const GradedFamily& b,
                                     const SearchOptions& options = {}, const Assertions& assertions = {});

struct VeroneseScalingReport {
  ValidationReport validation;
  ExtendedRational rho_powers;  // window rho(a, b_k^n) with r <= R
  ExtendedRational rho_family;  // window rho(a, b) with r <= kR
  std::optional<ExtendedRational> rees_powers;
  std::optional<ExtendedRational> rees_family;
  std::optional<bool> rees_equal;
};

VeroneseScalingReport veronese_scaling_check(const GradedFamily& a, const FamilyPtr& b, std::int64_t k,
                                             std::int64_t s_max, std::int64_t r_max,
                                             const SearchOptions& options = {}, const Assertions& assertions = {});

struct LinearFunction {
  std::int64_t slope = 1;
  std::int64_t intercept = 0;
  std::int64_t operator()(std::int64_t n) const { return slope * n + intercept; }
};

struct LinearlyFinerReport {
  bool finer = false;
  ExtendedRational rho_star;
  std::optional<LinearFunction> f;
  std::optional<Counterexample> counterexample;
  std::size_t window = 0;
  std::string note;
};

LinearlyFinerReport linearly_finer_check(const GradedFamily& a, const GradedFamily& b, std::size_t window,
                                         std::int64_t s_max, std::int64_t r_max, Search mode = Search::Auto);

/// Largest l with I inside p^l.
std::int64_t containment_order(const MonomialIdeal& ideal, const MonomialIdeal& prime, std::int64_t cap = 1000);

}  // namespace resurgence
