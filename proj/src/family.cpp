#include "resurgence/family.hpp"

#include <numeric>
#include <sstream>

#include "resurgence/errors.hpp"

namespace resurgence {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Powers: return "powers";
    case FamilyKind::Symbolic: return "symbolic";
    case FamilyKind::ClosurePowers: return "closure_powers";
    case FamilyKind::Ceiling: return "ceiling";
    case FamilyKind::Table: return "table";
    case FamilyKind::Pattern: return "pattern";
    case FamilyKind::ClosureOf: return "closure_of";
    case FamilyKind::Veronese: return "veronese";
  }
  return "unknown";
}

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::Structural: return "structural";
    case CertificateKind::Window: return "window";
    case CertificateKind::Asserted: return "asserted";
    case CertificateKind::Failed: return "failed";
  }
  return "unknown";
}

namespace {

Exponent ceil_div(const Integer& num, const Integer& den) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (!q.fits_slong_p()) throw OverflowError("exponent out of range");
  return q.get_si();
}

Exponent ceil_times(const Rational& alpha, std::int64_t n) {
  Rational p = alpha * Rational(Integer(static_cast<long>(n)));
  return ceil_div(p.get_num(), p.get_den());
}

}  // namespace

Exponent ExponentFn::operator()(std::int64_t n) const {
  if (n <= 0) return 0;
  switch (kind) {
    case Kind::Linear:
      return ceil_times(alpha, n);
    case Kind::Sqrt: {
      Integer r;
      Integer big(static_cast<long>(n));
      mpz_sqrt(r.get_mpz_t(), big.get_mpz_t());
      if (r * r < big) r += 1;
      return r.get_si();
    }
    case Kind::Log2: {
      Exponent t = 0;
      while ((std::int64_t{1} << t) < n + 1) ++t;
      return t;
    }
  }
  return 0;
}

bool ExponentFn::structurally_graded() const { return kind != Kind::Linear || alpha >= 0; }

PatternFactor PatternFactor::constant(MonomialIdeal base) { return affine(std::move(base), 0, 1, 1); }

PatternFactor PatternFactor::affine(MonomialIdeal base, std::int64_t num, std::int64_t add, std::int64_t den) {
  if (den <= 0) throw DomainError("pattern exponent denominator must be positive");
  PatternFactor f;
  f.kind = Kind::Base;
  f.base = std::move(base);
  f.num = num;
  f.add = add;
  f.den = den;
  return f;
}

PatternFactor PatternFactor::member(FamilyPtr family, std::int64_t offset) {
  if (!family && offset >= 0) throw DomainError("a self reference needs a negative offset");
  PatternFactor f;
  f.kind = Kind::Member;
  f.family = std::move(family);
  f.offset = offset;
  return f;
}

GradedFamily::GradedFamily(FamilyKind kind, std::size_t vars) : kind_(kind), vars_(vars) {}

FamilyPtr GradedFamily::powers(const MonomialIdeal& ideal) {
  auto f = std::make_shared<GradedFamily>(FamilyKind::Powers, ideal.vars());
  f->base_ = MonomialIdeal::from_generators(ideal.vars(), ideal.materialized());
  f->normal_base_ = !ideal.is_zero() && is_normal(f->base_);
  return f;
}

FamilyPtr GradedFamily::symbolic(const MonomialIdeal& ideal) {
  auto f = std::make_shared<GradedFamily>(FamilyKind::Symbolic, ideal.vars());
  f->base_ = MonomialIdeal::from_generators(ideal.vars(), ideal.materialized());
  if (ideal.is_zero()) throw DomainError("symbolic family of the zero ideal");
  if (!is_squarefree(f->base_)) throw CapabilityError("symbolic families need a squarefree ideal");
  f->covers_.covers = minimal_vertex_covers(f->base_);
  return f;
}

FamilyPtr GradedFamily::closure_powers(const MonomialIdeal& ideal) {
  if (ideal.is_zero()) throw DomainError("closure family of the zero ideal");
  auto f = std::make_shared<GradedFamily>(FamilyKind::ClosurePowers, ideal.vars());
  f->base_ = MonomialIdeal::from_generators(ideal.vars(), ideal.materialized());
  f->normal_base_ = is_normal(f->base_);
  return f;
}

FamilyPtr GradedFamily::ceiling(const MonomialIdeal& ideal, const Rational& alpha) {
  if (alpha < 0) throw DomainError("ceiling exponent must be nonnegative");
  auto f = std::make_shared<GradedFamily>(FamilyKind::Ceiling, ideal.vars());
  f->base_ = MonomialIdeal::from_generators(ideal.vars(), ideal.materialized());
  f->alpha_ = alpha;
  f->inner_ = powers(ideal);
  return f;
}

FamilyPtr GradedFamily::table(std::size_t vars, std::vector<MonomialIdeal> prefix, TableTail tail) {
  for (const auto& p : prefix) {
    if (p.vars() != vars) throw DimensionError("table member in a different ring");
  }
  if (tail.kind != TableTail::Kind::None && tail.ideal.vars() != vars) {
    throw DimensionError("table tail ideal in a different ring");
  }
  auto f = std::make_shared<GradedFamily>(FamilyKind::Table, vars);
  f->prefix_ = std::move(prefix);
  f->tail_ = std::move(tail);
  if (f->tail_.kind == TableTail::Kind::Power) {
    f->inner_ = powers(f->tail_.ideal);
    f->base_ = f->tail_.ideal;
  } else if (f->tail_.kind == TableTail::Kind::Constant) {
    f->base_ = f->tail_.ideal;
  }
  return f;
}

FamilyPtr GradedFamily::constant(const MonomialIdeal& ideal) {
  return table(ideal.vars(), {}, TableTail{TableTail::Kind::Constant, ideal, {}});
}

FamilyPtr GradedFamily::pattern(std::size_t vars, Pattern pattern) {
  if (pattern.period == 0 || pattern.residues.size() != pattern.period) {
    throw DomainError("pattern needs one expression per residue class");
  }
  for (const auto& expr : pattern.residues) {
    for (const auto& term : expr) {
      for (const auto& f : term) {
        if (f.kind == PatternFactor::Kind::Base && f.base.vars() != vars) {
          throw DimensionError("pattern base ideal in a different ring");
        }
        if (f.kind == PatternFactor::Kind::Member && f.family && f.family->vars() != vars) {
          throw DimensionError("pattern member family in a different ring");
        }
      }
    }
  }
  auto f = std::make_shared<GradedFamily>(FamilyKind::Pattern, vars);
  f->pattern_ = std::move(pattern);
  return f;
}

FamilyPtr GradedFamily::closure_of(const FamilyPtr& family) {
  if (family->kind_ == FamilyKind::Powers && !family->base_.is_zero()) return closure_powers(family->base_);
  if (family->kind_ == FamilyKind::ClosurePowers || family->kind_ == FamilyKind::ClosureOf) return family;
  auto f = std::make_shared<GradedFamily>(FamilyKind::ClosureOf, family->vars_);
  f->inner_ = family;
  return f;
}

FamilyPtr GradedFamily::veronese(const FamilyPtr& family, std::int64_t k) {
  if (k < 1) throw DomainError("Veronese index must be positive");
  auto f = std::make_shared<GradedFamily>(FamilyKind::Veronese, family->vars_);
  f->inner_ = family;
  f->k_ = k;
  return f;
}

std::string GradedFamily::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  switch (kind_) {
    case FamilyKind::Powers:
    case FamilyKind::Symbolic:
    case FamilyKind::ClosurePowers:
      os << " of " << base_.to_string();
      break;
    case FamilyKind::Ceiling:
      os << " of " << base_.to_string() << " with alpha " << alpha_.get_str();
      break;
    case FamilyKind::Veronese:
      os << " " << k_ << " of " << inner_->describe();
      break;
    case FamilyKind::ClosureOf:
      os << " " << inner_->describe();
      break;
    case FamilyKind::Table:
      os << " with " << prefix_.size() << " listed members";
      break;
    case FamilyKind::Pattern:
      os << " of period " << pattern_.period;
      break;
  }
  return os.str();
}

MonomialIdeal GradedFamily::member(std::int64_t n) const {
  if (n < 0) return MonomialIdeal::zero(vars_);
  if (n == 0) return MonomialIdeal::unit(vars_);
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
  }
  MonomialIdeal value = compute(n);
  std::lock_guard lock(mutex_);
  return cache_.emplace(n, std::move(value)).first->second;
}

MonomialIdeal GradedFamily::eval_factor(const PatternFactor& f, std::int64_t n) const {
  if (f.kind == PatternFactor::Kind::Member) {
    const GradedFamily& source = f.family ? *f.family : *this;
    return source.member(n + f.offset);
  }
  Integer top = Integer(static_cast<long>(f.num)) * Integer(static_cast<long>(n)) + Integer(static_cast<long>(f.add));
  Exponent e = ceil_div(top, Integer(static_cast<long>(f.den)));
  if (e < 0) return MonomialIdeal::zero(vars_);
  return power(f.base, e);
}

MonomialIdeal GradedFamily::compute(std::int64_t n) const {
  switch (kind_) {
    case FamilyKind::Powers: {
      if (base_.is_zero()) return base_;
      if (normal_base_) return integral_closure(base_, n);
      std::int64_t from = 0;
      MonomialIdeal start = MonomialIdeal::unit(vars_);
      {
        std::lock_guard lock(mutex_);
        auto it = cache_.lower_bound(n);
        if (it != cache_.begin()) {
          --it;
          from = it->first;
          start = it->second;
        }
      }
      return multiply(start, power(base_, n - from));
    }
    case FamilyKind::Symbolic:
      return MonomialIdeal::symbolic_view(vars_, SymbolicData{covers_.covers, n});
    case FamilyKind::ClosurePowers:
      return integral_closure(base_, n);
    case FamilyKind::Ceiling:
      return inner_->member(ceil_times(alpha_, n));
    case FamilyKind::Table: {
      if (static_cast<std::size_t>(n) <= prefix_.size()) return prefix_[n - 1];
      switch (tail_.kind) {
        case TableTail::Kind::None:
          throw RangeError("table family has no member at index " + std::to_string(n));
        case TableTail::Kind::Constant:
          return tail_.ideal;
        case TableTail::Kind::Power:
          return inner_->member(tail_.exponent(n));
      }
      break;
    }
    case FamilyKind::Pattern: {
      if (static_cast<std::size_t>(n) <= pattern_.prefix.size()) return pattern_.prefix[n - 1];
      const PatternExpr& expr = pattern_.residues[static_cast<std::size_t>(n) % pattern_.period];
      MonomialIdeal total = MonomialIdeal::zero(vars_);
      for (const auto& term : expr) {
        MonomialIdeal product = MonomialIdeal::unit(vars_);
        for (const auto& f : term) {
          product = multiply(product, eval_factor(f, n));
          if (product.is_zero()) break;
        }
        total = sum(total, product);
      }
      return total;
    }
    case FamilyKind::ClosureOf: {
      MonomialIdeal j = inner_->member(n);
      if (j.is_zero() || j.view() == IdealView::Closure) return j;
      return integral_closure(j, 1);
    }
    case FamilyKind::Veronese: {
      Exponent index = checked_mul(k_, n);
      return inner_->member(index);
    }
  }
  throw CapabilityError("unsupported family kind");
}

bool GradedFamily::structural_filtration() const {
  switch (kind_) {
    case FamilyKind::Powers:
    case FamilyKind::Symbolic:
    case FamilyKind::ClosurePowers:
    case FamilyKind::Ceiling:
      return true;
    case FamilyKind::Table:
      return prefix_.empty() && tail_.kind != TableTail::Kind::None;
    case FamilyKind::ClosureOf:
    case FamilyKind::Veronese:
      return inner_->structural_filtration();
    case FamilyKind::Pattern:
      return false;
  }
  return false;
}

bool GradedFamily::structural_graded() const {
  switch (kind_) {
    case FamilyKind::Powers:
    case FamilyKind::Symbolic:
    case FamilyKind::ClosurePowers:
    case FamilyKind::Ceiling:
      return true;
    case FamilyKind::Table:
      if (!prefix_.empty()) return false;
      if (tail_.kind == TableTail::Kind::Constant) return true;
      return tail_.kind == TableTail::Kind::Power && tail_.exponent.structurally_graded();
    case FamilyKind::ClosureOf:
    case FamilyKind::Veronese:
      return inner_->structural_graded();
    case FamilyKind::Pattern:
      return false;
  }
  return false;
}

bool GradedFamily::constant_tail() const {
  switch (kind_) {
    case FamilyKind::Table:
      return tail_.kind == TableTail::Kind::Constant;
    case FamilyKind::ClosureOf:
    case FamilyKind::Veronese:
      return inner_->constant_tail();
    case FamilyKind::Powers:
    case FamilyKind::ClosurePowers:
    case FamilyKind::Ceiling:
      return base_.is_unit() || (kind_ == FamilyKind::Ceiling && alpha_ == 0);
    default:
      return false;
  }
}

std::optional<std::int64_t> GradedFamily::structural_veronese() const {
  switch (kind_) {
    case FamilyKind::Powers:
      return 1;
    case FamilyKind::ClosurePowers:
      if (normal_base_) return 1;
      return std::nullopt;
    case FamilyKind::Ceiling:
      return alpha_.get_den().get_si();
    case FamilyKind::Table:
      if (prefix_.empty() && tail_.kind == TableTail::Kind::Power &&
          tail_.exponent.kind == ExponentFn::Kind::Linear) {
        return tail_.exponent.alpha.get_den().get_si();
      }
      return std::nullopt;
    case FamilyKind::Veronese: {
      auto inner = inner_->structural_veronese();
      if (!inner) return std::nullopt;
      return *inner / std::gcd(*inner, k_);
    }
    default:
      return std::nullopt;
  }
}

std::optional<GradedFamily::Bequiv> GradedFamily::structural_bequiv() const {
  {
    std::lock_guard lock(mutex_);
    if (bequiv_done_) return bequiv_cache_;
  }
  std::optional<Bequiv> out;
  switch (kind_) {
    case FamilyKind::Powers:
      if (!base_.is_zero()) out = Bequiv{base_, 0, false};
      break;
    case FamilyKind::ClosurePowers:
      out = Bequiv{base_, bequiv_constant(PowerFamilyKind::ClosurePowers, base_, 0).certified, false};
      break;
    case FamilyKind::Ceiling:
      if (alpha_ > 0 && alpha_.get_den() == 1) out = Bequiv{power(base_, alpha_.get_num().get_si()), 0, false};
      break;
    case FamilyKind::Table:
      if (prefix_.empty() && tail_.kind == TableTail::Kind::Power &&
          tail_.exponent.kind == ExponentFn::Kind::Linear && tail_.exponent.alpha == 1) {
        out = Bequiv{tail_.ideal, 0, false};
      }
      break;
    default:
      break;
  }
  std::lock_guard lock(mutex_);
  bequiv_done_ = true;
  bequiv_cache_ = out;
  return out;
}

bool GradedFamily::closure_kind() const {
  return kind_ == FamilyKind::ClosurePowers || kind_ == FamilyKind::ClosureOf ||
         (kind_ == FamilyKind::Powers && normal_base_) || (kind_ == FamilyKind::Ceiling && inner_->closure_kind());
}

namespace {

ValidationReport make_report(std::string property, std::size_t horizon) {
  ValidationReport r;
  r.property = std::move(property);
  r.horizon = horizon;
  r.holds = true;
  return r;
}

void fail(ValidationReport& r, std::vector<std::int64_t> indices, Monomial witness) {
  r.holds = false;
  r.certificate = CertificateKind::Failed;
  r.counterexample = Counterexample{std::move(indices), std::move(witness)};
}

}  // namespace

ValidationReport validate_graded(const GradedFamily& family, std::size_t horizon) {
  ValidationReport r = make_report("graded", horizon);
  const auto n = static_cast<std::int64_t>(horizon);
  for (std::int64_t total = 2; total <= n && r.holds; ++total) {
    MonomialIdeal target = family.member(total);
    for (std::int64_t p = 1; p <= total / 2 && r.holds; ++p) {
      const std::int64_t q = total - p;
      MonomialIdeal ap = family.member(p);
      MonomialIdeal aq = family.member(q);
      for (const auto& g : ap.materialized()) {
        for (const auto& h : aq.materialized()) {
          Monomial m = g * h;
          if (!target.contains(m)) {
            fail(r, {p, q}, m);
            break;
          }
        }
        if (!r.holds) break;
      }
    }
  }
  if (r.holds) r.certificate = family.structural_graded() ? CertificateKind::Structural : CertificateKind::Window;
  return r;
}

ValidationReport validate_filtration(const GradedFamily& family, std::size_t horizon) {
  ValidationReport r = make_report("filtration", horizon);
  for (std::int64_t p = 1; p < static_cast<std::int64_t>(horizon); ++p) {
    auto w = containment_witness(family.member(p + 1), family.member(p));
    if (w) {
      fail(r, {p + 1, p}, *w);
      return r;
    }
  }
  r.certificate = family.structural_filtration() ? CertificateKind::Structural : CertificateKind::Window;
  return r;
}

ValidationReport is_standard_veronese(const GradedFamily& family, std::int64_t k, std::size_t horizon) {
  ValidationReport r = make_report("standard_veronese(" + std::to_string(k) + ")", horizon);
  if (k < 1) throw DomainError("Veronese index must be positive");
  MonomialIdeal bk = MonomialIdeal::from_generators(family.vars(), family.member(k).materialized());
  MonomialIdeal p = MonomialIdeal::unit(family.vars());
  for (std::int64_t n = 1; n <= static_cast<std::int64_t>(horizon); ++n) {
    p = multiply(p, bk);
    MonomialIdeal left = family.member(checked_mul(k, n));
    if (auto w = containment_witness(left, p)) {
      fail(r, {k * n, n}, *w);
      return r;
    }
    if (auto w = containment_witness(p, left)) {
      fail(r, {k * n, n}, *w);
      return r;
    }
  }
  auto s = family.structural_veronese();
  r.certificate = (s && k % *s == 0) ? CertificateKind::Structural : CertificateKind::Window;
  return r;
}

ValidationReport is_b_equivalent(const GradedFamily& family, const MonomialIdeal& b, std::int64_t k,
                                 std::size_t horizon) {
  ValidationReport r = make_report("b_equivalent(" + std::to_string(k) + ")", horizon);
  if (k < 0) throw DomainError("b-equivalence shift must be nonnegative");
  MonomialIdeal base = MonomialIdeal::from_generators(b.vars(), b.materialized());
  MonomialIdeal p = MonomialIdeal::unit(b.vars());
  for (std::int64_t i = 1; i <= static_cast<std::int64_t>(horizon); ++i) {
    p = multiply(p, base);
    if (auto w = containment_witness(family.member(i + k), p)) {
      fail(r, {i + k, i}, *w);
      return r;
    }
    if (auto w = containment_witness(p, family.member(i))) {
      fail(r, {i, i}, *w);
      return r;
    }
  }
  auto s = family.structural_bequiv();
  r.certificate = (s && s->k <= k && same_ideal(s->ideal, base)) ? CertificateKind::Structural
                                                                  : CertificateKind::Window;
  return r;
}

}  // namespace resurgence
