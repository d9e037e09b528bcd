#pragma once

#include <optional>
#include <string>

#include "resurgence/linear_program.hpp"
#include "resurgence/monomial.hpp"

namespace resurgence {

class GradedFamily;

/// v(x^a) = <w, a> for a nonnegative weight vector w.
class MonomialValuation {
 public:
  MonomialValuation() = default;
  explicit MonomialValuation(IntegerVector weights);

  const IntegerVector& weights() const { return w_; }
  std::size_t vars() const { return w_.size(); }
  std::string to_string() const;

  friend bool operator==(const MonomialValuation&, const MonomialValuation&) = default;

 private:
  IntegerVector w_;
};

MonomialValuation degree_valuation(std::size_t vars);

struct IdealValue {
  Integer value;
  Monomial argmin;
};

Integer value_of_monomial(const MonomialValuation& v, const Monomial& m);

/// min over generators; closure views use the scaled Newton vertices.
IdealValue value_of_ideal(const MonomialValuation& v, const MonomialIdeal& ideal);

/// v(F_n), from a closed form when the family kind has one.
Integer family_value(const MonomialValuation& v, const GradedFamily& family, std::int64_t n);

enum class WaldschmidtMethod { ClosedForm, Veronese, Lp, Window };

struct WaldschmidtResult {
  std::optional<Rational> lower;
  Rational upper;
  bool certified = false;
  WaldschmidtMethod method = WaldschmidtMethod::Window;
  std::optional<LpOptimum> certificate;
  std::string note;

  /// The exact value; only meaningful when certified.
  const Rational& value() const { return upper; }
};

std::string to_string(WaldschmidtMethod method);

/// lim v(F_n)/n = inf v(F_n)/n.
///
/// `asserted_veronese` is a user-asserted k with F_{kn} = F_k^n; without it, a
/// Veronese index found on the window gives an uncertified value.
WaldschmidtResult skew_waldschmidt(const MonomialValuation& v, const GradedFamily& family,
                                   std::size_t window,
                                   std::optional<std::int64_t> asserted_veronese = std::nullopt,
                                   std::int64_t kmax = 6);

}  // namespace resurgence
