#include "resurgence/valuation.hpp"

#include <sstream>

#include "resurgence/errors.hpp"
#include "resurgence/family.hpp"

namespace resurgence {

MonomialValuation::MonomialValuation(IntegerVector weights) : w_(std::move(weights)) {
  bool any = false;
  for (const auto& x : w_) {
    if (x < 0) throw DomainError("valuation weights must be nonnegative");
    any = any || x > 0;
  }
  if (!any) throw DomainError("valuation weights must not all vanish");
}

std::string MonomialValuation::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w_.size(); ++i) os << (i ? "," : "") << w_[i].get_str();
  os << ")";
  return os.str();
}

MonomialValuation degree_valuation(std::size_t vars) { return MonomialValuation(IntegerVector(vars, 1)); }

std::string to_string(WaldschmidtMethod method) {
  switch (method) {
    case WaldschmidtMethod::ClosedForm: return "closed-form";
    case WaldschmidtMethod::Veronese: return "veronese";
    case WaldschmidtMethod::Lp: return "lp";
    case WaldschmidtMethod::Window: return "window";
  }
  return "unknown";
}

Integer value_of_monomial(const MonomialValuation& v, const Monomial& m) {
  if (m.vars() != v.vars()) throw DimensionError("valuation and monomial lengths differ");
  Integer s = 0;
  for (std::size_t i = 0; i < m.vars(); ++i) s += v.weights()[i] * Integer(static_cast<long>(m[i]));
  return s;
}

IdealValue value_of_ideal(const MonomialValuation& v, const MonomialIdeal& ideal) {
  if (ideal.vars() != v.vars()) throw DimensionError("valuation and ideal lengths differ");
  if (ideal.is_zero()) throw DomainError("valuation of the zero ideal");
  if (const ClosureData* c = ideal.closure(); c && !c->polyhedron->vertices().empty()) {
    std::optional<IdealValue> best;
    for (const auto& vertex : c->polyhedron->vertices()) {
      std::vector<Exponent> e;
      for (const auto& x : vertex) {
        Rational scaled = x * Rational(Integer(static_cast<long>(c->scale)));
        if (scaled.get_den() != 1) throw CapabilityError("closure view with a non-lattice vertex");
        e.push_back(scaled.get_num().get_si());
      }
      Monomial m(std::move(e));
      Integer val = value_of_monomial(v, m);
      if (!best || val < best->value) best = IdealValue{val, m};
    }
    return *best;
  }
  std::optional<IdealValue> best;
  for (const auto& g : ideal.materialized()) {
    Integer val = value_of_monomial(v, g);
    if (!best || val < best->value) best = IdealValue{val, g};
  }
  return *best;
}

Integer family_value(const MonomialValuation& v, const GradedFamily& family, std::int64_t n) {
  if (n < 0) throw DomainError("valuation of the zero ideal");
  if (n == 0) return 0;
  const Integer big_n(static_cast<long>(n));
  switch (family.kind()) {
    case FamilyKind::Powers:
    case FamilyKind::ClosurePowers:
      if (family.base().is_zero()) throw DomainError("valuation of the zero ideal");
      return big_n * value_of_ideal(v, family.base()).value;
    case FamilyKind::Ceiling: {
      Rational e = family.alpha() * Rational(big_n);
      Integer c;
      mpz_cdiv_q(c.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
      return c * value_of_ideal(v, family.base()).value;
    }
    case FamilyKind::Table:
      if (static_cast<std::size_t>(n) > family.table_prefix().size()) {
        const TableTail& tail = family.tail();
        if (tail.kind == TableTail::Kind::Constant) return value_of_ideal(v, tail.ideal).value;
        if (tail.kind == TableTail::Kind::Power) {
          return Integer(static_cast<long>(tail.exponent(n))) * value_of_ideal(v, tail.ideal).value;
        }
      }
      break;
    case FamilyKind::Veronese:
      return family_value(v, *family.inner(), checked_mul(family.veronese_k(), n));
    case FamilyKind::ClosureOf:
      return family_value(v, *family.inner(), n);
    default:
      break;
  }
  return value_of_ideal(v, family.member(n)).value;
}

namespace {

WaldschmidtResult exact(Rational value, WaldschmidtMethod method, std::string note) {
  WaldschmidtResult r;
  r.lower = value;
  r.upper = std::move(value);
  r.certified = true;
  r.method = method;
  r.note = std::move(note);
  return r;
}

bool bounded_pattern(const GradedFamily& family) {
  if (family.kind() != FamilyKind::Pattern) return family.constant_tail();
  for (const auto& expr : family.pattern_data().residues) {
    for (const auto& term : expr) {
      for (const auto& f : term) {
        if (f.kind == PatternFactor::Kind::Base && f.num != 0) return false;
        if (f.kind == PatternFactor::Kind::Member && (!f.family || !bounded_pattern(*f.family))) return false;
      }
    }
  }
  return true;
}

}  // namespace

WaldschmidtResult skew_waldschmidt(const MonomialValuation& v, const GradedFamily& family, std::size_t window,
                                   std::optional<std::int64_t> asserted_veronese, std::int64_t kmax) {
  if (window < 1) throw DomainError("window must be positive");
  if (v.vars() != family.vars()) throw DimensionError("valuation and family lengths differ");
  switch (family.kind()) {
    case FamilyKind::Powers:
    case FamilyKind::ClosurePowers:
      return exact(Rational(value_of_ideal(v, family.base()).value), WaldschmidtMethod::ClosedForm,
                   "v(I) for powers and their closures");
    case FamilyKind::Ceiling:
      return exact(family.alpha() * Rational(value_of_ideal(v, family.base()).value),
                   WaldschmidtMethod::ClosedForm, "alpha * v(I)");
    case FamilyKind::Symbolic: {
      LinearProgram lp;
      lp.objective.assign(v.weights().begin(), v.weights().end());
      for (const auto& cover : minimal_vertex_covers(family.base())) {
        IntegerVector row(family.vars(), 0);
        for (auto i : cover) row[i] = 1;
        lp.constraints.emplace_back(row, Rational(1));
      }
      LpResult res = lp_minimize(lp);
      const auto* opt = std::get_if<LpOptimum>(&res);
      if (!opt || !verify_certificate(lp, *opt)) throw CapabilityError("cover LP did not certify");
      WaldschmidtResult r = exact(opt->value, WaldschmidtMethod::Lp, "cover LP with dual certificate");
      r.certificate = *opt;
      return r;
    }
    case FamilyKind::Table: {
      const TableTail& tail = family.tail();
      if (tail.kind == TableTail::Kind::Constant) {
        return exact(Rational(0), WaldschmidtMethod::ClosedForm, "constant tail");
      }
      if (tail.kind == TableTail::Kind::Power) {
        if (tail.exponent.kind == ExponentFn::Kind::Linear) {
          return exact(tail.exponent.alpha * Rational(value_of_ideal(v, tail.ideal).value),
                       WaldschmidtMethod::ClosedForm, "alpha * v(I) from the tail");
        }
        return exact(Rational(0), WaldschmidtMethod::ClosedForm, "sublinear tail exponent");
      }
      break;
    }
    case FamilyKind::Veronese: {
      WaldschmidtResult inner = skew_waldschmidt(v, *family.inner(), window, std::nullopt, kmax);
      const Rational k(Integer(static_cast<long>(family.veronese_k())));
      inner.upper *= k;
      if (inner.lower) *inner.lower *= k;
      inner.note = "k times the inner constant; " + inner.note;
      return inner;
    }
    case FamilyKind::ClosureOf: {
      WaldschmidtResult inner = skew_waldschmidt(v, *family.inner(), window, std::nullopt, kmax);
      inner.note = "closure preserves monomial values; " + inner.note;
      return inner;
    }
    case FamilyKind::Pattern:
      if (bounded_pattern(family)) {
        return exact(Rational(0), WaldschmidtMethod::ClosedForm, "bounded periodic members");
      }
      break;
  }

  if (auto k = family.structural_veronese()) {
    Rational value(family_value(v, family, *k), Integer(static_cast<long>(*k)));
    value.canonicalize();
    return exact(value, WaldschmidtMethod::Veronese, "v(F_k)/k for a standard Veronese");
  }
  if (asserted_veronese) {
    const std::int64_t k = *asserted_veronese;
    Rational value(family_value(v, family, k), Integer(static_cast<long>(k)));
    value.canonicalize();
    return exact(value, WaldschmidtMethod::Veronese, "v(F_k)/k, certified-given-assertions");
  }
  for (std::int64_t k = 1; k <= kmax; ++k) {
    if (!is_standard_veronese(family, k, 3).holds) continue;
    WaldschmidtResult r;
    r.method = WaldschmidtMethod::Veronese;
    r.upper = Rational(family_value(v, family, k), Integer(static_cast<long>(k)));
    r.upper.canonicalize();
    r.note = "v(F_k)/k with F_{kn} = F_k^n checked for n <= 3 only";
    return r;
  }
  WaldschmidtResult r;
  r.method = WaldschmidtMethod::Window;
  bool first = true;
  for (std::size_t n = 1; n <= window; ++n) {
    Rational q(family_value(v, family, static_cast<std::int64_t>(n)), Integer(static_cast<long>(n)));
    q.canonicalize();
    if (first || q < r.upper) r.upper = q;
    first = false;
  }
  r.note = "upper bound from the window minimum of v(F_n)/n";
  return r;
}

}  // namespace resurgence
