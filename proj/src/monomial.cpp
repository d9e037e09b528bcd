#include "resurgence/monomial.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "resurgence/errors.hpp"

namespace resurgence {

Exponent checked_add(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("exponent addition overflow");
  return r;
}

Exponent checked_mul(Exponent a, Exponent b) {
  Exponent r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("exponent multiplication overflow");
  return r;
}

Monomial::Monomial(std::vector<Exponent> exponents) : e_(std::move(exponents)) {
  for (auto x : e_) {
    if (x < 0) throw DomainError("negative exponent");
  }
}

Monomial Monomial::one(std::size_t vars) { return Monomial(std::vector<Exponent>(vars, 0)); }

Exponent Monomial::degree() const {
  Exponent d = 0;
  for (auto x : e_) d = checked_add(d, x);
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  if (other.e_.size() != e_.size()) throw DimensionError("monomials in different rings");
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  if (other.e_.size() != e_.size()) throw DimensionError("monomials in different rings");
  std::vector<Exponent> r(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) r[i] = std::max(e_[i], other.e_[i]);
  return Monomial(std::move(r));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.e_.size() != b.e_.size()) throw DimensionError("monomials in different rings");
  std::vector<Exponent> r(a.e_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add(a.e_[i], b.e_[i]);
  return Monomial(std::move(r));
}

std::string Monomial::to_string() const {
  static const char* names[] = {"x", "y", "z", "w"};
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] == 0) continue;
    if (any) os << "*";
    any = true;
    if (e_.size() <= 4) {
      os << names[i];
    } else {
      os << "x" << (i + 1);
    }
    if (e_[i] > 1) os << "^" << e_[i];
  }
  if (!any) os << "1";
  return os.str();
}

struct MonomialIdeal::Impl {
  std::size_t vars = 0;
  IdealView view = IdealView::Explicit;
  std::vector<Monomial> generators;
  SymbolicData symbolic;
  ClosureData closure;
  mutable std::once_flag once;
  mutable std::vector<Monomial> cache;
};

MonomialIdeal::MonomialIdeal() : impl_(std::make_shared<Impl>()) {}

MonomialIdeal::MonomialIdeal(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

MonomialIdeal MonomialIdeal::zero(std::size_t vars) {
  auto impl = std::make_shared<Impl>();
  impl->vars = vars;
  return MonomialIdeal(impl);
}

MonomialIdeal MonomialIdeal::unit(std::size_t vars) {
  auto impl = std::make_shared<Impl>();
  impl->vars = vars;
  impl->generators.push_back(Monomial::one(vars));
  return MonomialIdeal(impl);
}

MonomialIdeal MonomialIdeal::from_generators(std::size_t vars, std::vector<Monomial> generators) {
  for (const auto& g : generators) {
    if (g.vars() != vars) throw DimensionError("generator length does not match variable count");
  }
  auto impl = std::make_shared<Impl>();
  impl->vars = vars;
  impl->generators = minimize(std::move(generators));
  return MonomialIdeal(impl);
}

MonomialIdeal MonomialIdeal::symbolic_view(std::size_t vars, SymbolicData data) {
  if (data.power < 0) throw DomainError("negative symbolic exponent");
  for (const auto& c : data.covers) {
    for (auto i : c) {
      if (i >= vars) throw DimensionError("cover variable out of range");
    }
  }
  if (data.power == 0 || data.covers.empty()) return unit(vars);
  auto impl = std::make_shared<Impl>();
  impl->vars = vars;
  impl->view = IdealView::Symbolic;
  impl->symbolic = std::move(data);
  return MonomialIdeal(impl);
}

MonomialIdeal MonomialIdeal::closure_view(std::size_t vars, ClosureData data) {
  if (!data.polyhedron || data.polyhedron->dim() != vars) {
    throw DimensionError("closure polyhedron does not match variable count");
  }
  if (data.scale < 0) throw DomainError("negative closure scale");
  if (data.scale == 0) return unit(vars);
  auto impl = std::make_shared<Impl>();
  impl->vars = vars;
  impl->view = IdealView::Closure;
  impl->closure = std::move(data);
  return MonomialIdeal(impl);
}

IdealView MonomialIdeal::view() const { return impl_->view; }
std::size_t MonomialIdeal::vars() const { return impl_->vars; }

bool MonomialIdeal::is_zero() const {
  return impl_->view == IdealView::Explicit && impl_->generators.empty();
}

bool MonomialIdeal::is_unit() const {
  if (impl_->view != IdealView::Explicit) return contains(Monomial::one(impl_->vars));
  return impl_->generators.size() == 1 && impl_->generators[0].is_one();
}

const std::vector<Monomial>& MonomialIdeal::generators() const {
  if (impl_->view != IdealView::Explicit) {
    throw RepresentationError("membership view has no explicit generators; materialize it first");
  }
  return impl_->generators;
}

const SymbolicData* MonomialIdeal::symbolic() const {
  return impl_->view == IdealView::Symbolic ? &impl_->symbolic : nullptr;
}

const ClosureData* MonomialIdeal::closure() const {
  return impl_->view == IdealView::Closure ? &impl_->closure : nullptr;
}

const std::vector<Monomial>& MonomialIdeal::materialized(std::size_t cap) const {
  if (impl_->view == IdealView::Explicit) return impl_->generators;
  std::call_once(impl_->once, [&] {
    const std::size_t n = impl_->vars;
    std::vector<std::vector<std::int64_t>> points;
    if (impl_->view == IdealView::Symbolic) {
      const SymbolicData& s = impl_->symbolic;
      std::vector<HalfSpace> rows;
      for (const auto& c : s.covers) {
        IntegerVector w(n, 0);
        for (auto i : c) w[i] = 1;
        rows.emplace_back(w, Rational(1));
      }
      RationalPolyhedron p(n, std::move(rows));
      std::vector<std::int64_t> box(n, s.power);
      points = minimal_lattice_points(p, s.power, box, cap);
    } else {
      const ClosureData& c = impl_->closure;
      points = minimal_lattice_points(*c.polyhedron, c.scale, c.box, cap);
    }
    std::vector<Monomial> gens;
    gens.reserve(points.size());
    for (auto& p : points) gens.emplace_back(std::move(p));
    impl_->cache = minimize(std::move(gens));
  });
  return impl_->cache;
}

bool MonomialIdeal::contains(const Monomial& m) const {
  if (m.vars() != impl_->vars) throw DimensionError("monomial length does not match ideal");
  switch (impl_->view) {
    case IdealView::Explicit:
      return std::any_of(impl_->generators.begin(), impl_->generators.end(),
                         [&](const Monomial& g) { return g.divides(m); });
    case IdealView::Symbolic:
      for (const auto& c : impl_->symbolic.covers) {
        Exponent s = 0;
        for (auto i : c) s = checked_add(s, m[i]);
        if (s < impl_->symbolic.power) return false;
      }
      return true;
    case IdealView::Closure:
      return impl_->closure.polyhedron->member_scaled(m.exponents(), impl_->closure.scale);
  }
  return false;
}

std::string MonomialIdeal::to_string() const {
  std::ostringstream os;
  switch (impl_->view) {
    case IdealView::Explicit: {
      if (impl_->generators.empty()) return "(0)";
      os << "(";
      for (std::size_t i = 0; i < impl_->generators.size(); ++i) {
        if (i) os << ", ";
        os << impl_->generators[i].to_string();
      }
      os << ")";
      return os.str();
    }
    case IdealView::Symbolic:
      os << "symbolic power " << impl_->symbolic.power << " over " << impl_->symbolic.covers.size()
         << " covers";
      return os.str();
    case IdealView::Closure:
      os << "closure of power " << impl_->closure.scale;
      return os.str();
  }
  return os.str();
}

std::vector<Monomial> minimize(std::vector<Monomial> generators) {
  if (generators.empty()) return generators;
  const std::size_t n = generators[0].vars();
  for (const auto& g : generators) {
    if (g.vars() != n) throw DimensionError("generators of different lengths");
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  std::vector<std::pair<Exponent, std::size_t>> order;
  order.reserve(generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i) order.emplace_back(generators[i].degree(), i);
  std::sort(order.begin(), order.end());
  std::vector<const Monomial*> kept;
  std::vector<Exponent> kept_degree;
  for (const auto& [deg, idx] : order) {
    const Monomial& m = generators[idx];
    bool divisible = false;
    for (std::size_t k = 0; k < kept.size() && kept_degree[k] < deg; ++k) {
      if (kept[k]->divides(m)) {
        divisible = true;
        break;
      }
    }
    if (!divisible) {
      kept.push_back(&m);
      kept_degree.push_back(deg);
    }
  }
  std::vector<Monomial> out;
  out.reserve(kept.size());
  for (auto* p : kept) out.push_back(*p);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_same_ring(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.vars() != b.vars()) throw DimensionError("ideals in different rings");
}

}  // namespace

MonomialIdeal multiply(const MonomialIdeal& a, const MonomialIdeal& b) {
  check_same_ring(a, b);
  const auto& ga = a.materialized();
  const auto& gb = b.materialized();
  std::vector<Monomial> products;
  products.reserve(ga.size() * gb.size());
  for (const auto& x : ga) {
    for (const auto& y : gb) products.push_back(x * y);
  }
  return MonomialIdeal::from_generators(a.vars(), std::move(products));
}

MonomialIdeal power(const MonomialIdeal& a, Exponent n) {
  if (n < 0) throw DomainError("negative power");
  MonomialIdeal result = MonomialIdeal::unit(a.vars());
  MonomialIdeal base = MonomialIdeal::from_generators(a.vars(), a.materialized());
  while (n > 0) {
    if (n & 1) result = multiply(result, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b) {
  check_same_ring(a, b);
  const auto& ga = a.materialized();
  const auto& gb = b.materialized();
  std::vector<Monomial> lcms;
  lcms.reserve(ga.size() * gb.size());
  for (const auto& x : ga) {
    for (const auto& y : gb) lcms.push_back(x.lcm(y));
  }
  return MonomialIdeal::from_generators(a.vars(), std::move(lcms));
}

MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  check_same_ring(a, b);
  std::vector<Monomial> all = a.materialized();
  const auto& gb = b.materialized();
  all.insert(all.end(), gb.begin(), gb.end());
  return MonomialIdeal::from_generators(a.vars(), std::move(all));
}

std::optional<Monomial> containment_witness(const MonomialIdeal& a, const MonomialIdeal& b) {
  check_same_ring(a, b);
  for (const auto& g : a.materialized()) {
    if (!b.contains(g)) return g;
  }
  return std::nullopt;
}

bool is_subset(const MonomialIdeal& a, const MonomialIdeal& b) {
  return !containment_witness(a, b).has_value();
}

bool same_ideal(const MonomialIdeal& a, const MonomialIdeal& b) {
  check_same_ring(a, b);
  return a.materialized() == b.materialized();
}

Monomial monomial_of(std::initializer_list<Exponent> exponents) {
  return Monomial(std::vector<Exponent>(exponents));
}

MonomialIdeal ideal_of(std::size_t vars, std::initializer_list<std::initializer_list<Exponent>> generators) {
  std::vector<Monomial> gens;
  for (const auto& g : generators) gens.push_back(monomial_of(g));
  return MonomialIdeal::from_generators(vars, std::move(gens));
}

}  // namespace resurgence
