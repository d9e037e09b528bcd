#include "resurgence/closures.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "resurgence/errors.hpp"

namespace resurgence {

namespace {

std::mutex polyhedron_mutex;
std::map<std::vector<Monomial>, std::shared_ptr<const RationalPolyhedron>> polyhedron_cache;

std::vector<Exponent> closure_box(const std::vector<Monomial>& gens, std::size_t vars, Exponent n) {
  std::vector<Exponent> box(vars, 0);
  for (const auto& g : gens) {
    for (std::size_t i = 0; i < vars; ++i) box[i] = std::max(box[i], g[i]);
  }
  for (auto& b : box) b = checked_mul(b, n);
  return box;
}

}  // namespace

std::shared_ptr<const RationalPolyhedron> newton_polyhedron(const MonomialIdeal& ideal) {
  if (ideal.is_zero()) throw DomainError("Newton polyhedron of the zero ideal");
  const auto& gens = ideal.materialized();
  {
    std::lock_guard lock(polyhedron_mutex);
    auto it = polyhedron_cache.find(gens);
    if (it != polyhedron_cache.end()) return it->second;
  }
  const std::size_t n = ideal.vars();
  std::vector<RationalVector> points;
  for (const auto& g : gens) {
    RationalVector p;
    for (auto e : g.exponents()) p.emplace_back(static_cast<long>(e));
    points.push_back(std::move(p));
  }
  std::vector<RationalVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector r(n, 0);
    r[i] = 1;
    rays.push_back(std::move(r));
  }
  auto p = std::make_shared<const RationalPolyhedron>(hull_with_recession(points, rays));
  std::lock_guard lock(polyhedron_mutex);
  return polyhedron_cache.emplace(gens, p).first->second;
}

MonomialIdeal integral_closure(const MonomialIdeal& ideal, Exponent n) {
  if (ideal.is_zero()) throw DomainError("integral closure of the zero ideal");
  if (n < 0) throw DomainError("negative power");
  if (ideal.view() == IdealView::Closure) {
    const ClosureData& c = *ideal.closure();
    ClosureData data{c.polyhedron, checked_mul(c.scale, n), c.box};
    for (auto& b : data.box) b = checked_mul(b, n);
    return MonomialIdeal::closure_view(ideal.vars(), std::move(data));
  }
  const auto& gens = ideal.materialized();
  ClosureData data{newton_polyhedron(ideal), n, closure_box(gens, ideal.vars(), n)};
  return MonomialIdeal::closure_view(ideal.vars(), std::move(data));
}

ReesValuationSet rees_valuations(const MonomialIdeal& ideal) {
  if (ideal.is_zero()) throw DomainError("Rees valuations of the zero ideal");
  if (ideal.is_unit()) throw DomainError("the unit ideal has no Rees valuations");
  ReesValuationSet out{ideal, {}};
  const auto& gens = ideal.materialized();
  for (const auto& h : newton_polyhedron(ideal)->valuation_candidates()) {
    Integer best = -1;
    for (const auto& g : gens) {
      Integer s = 0;
      for (std::size_t i = 0; i < g.vars(); ++i) s += h.normal()[i] * Integer(static_cast<long>(g[i]));
      if (best < 0 || s < best) best = s;
    }
    out.valuations.push_back({h.normal(), best});
  }
  std::sort(out.valuations.begin(), out.valuations.end(),
            [](const ReesValuation& a, const ReesValuation& b) { return a.weights < b.weights; });
  return out;
}

bool is_squarefree(const MonomialIdeal& ideal) {
  for (const auto& g : ideal.materialized()) {
    for (auto e : g.exponents()) {
      if (e > 1) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> minimal_vertex_covers(const MonomialIdeal& ideal) {
  const std::size_t n = ideal.vars();
  if (n > 12) throw CapabilityError("vertex cover enumeration supports at most 12 variables");
  std::vector<std::uint32_t> edges;
  for (const auto& g : ideal.materialized()) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (g[i] > 0) mask |= 1u << i;
    }
    edges.push_back(mask);
  }
  if (std::find(edges.begin(), edges.end(), 0u) != edges.end()) return {};

  std::vector<std::uint32_t> order(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < order.size(); ++m) order[m] = m;
  std::stable_sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a) < __builtin_popcount(b);
  });
  std::vector<std::uint32_t> covers;
  for (auto m : order) {
    bool redundant = std::any_of(covers.begin(), covers.end(), [&](std::uint32_t c) { return (c & m) == c; });
    if (redundant) continue;
    bool hits = std::all_of(edges.begin(), edges.end(), [&](std::uint32_t e) { return (e & m) != 0; });
    if (hits) covers.push_back(m);
  }
  std::sort(covers.begin(), covers.end());
  std::vector<std::vector<std::size_t>> out;
  for (auto c : covers) {
    std::vector<std::size_t> cover;
    for (std::size_t i = 0; i < n; ++i) {
      if (c & (1u << i)) cover.push_back(i);
    }
    out.push_back(std::move(cover));
  }
  return out;
}

MonomialIdeal symbolic_power(const MonomialIdeal& ideal, Exponent n) {
  if (ideal.is_zero()) throw DomainError("symbolic power of the zero ideal");
  if (n < 0) throw DomainError("negative symbolic exponent");
  if (!is_squarefree(ideal)) throw CapabilityError("symbolic powers need a squarefree ideal");
  if (ideal.is_unit() || n == 0) return MonomialIdeal::unit(ideal.vars());
  return MonomialIdeal::symbolic_view(ideal.vars(), SymbolicData{minimal_vertex_covers(ideal), n});
}

MonomialIdeal symbolic_power_by_intersection(const MonomialIdeal& ideal, Exponent n) {
  if (ideal.is_zero()) throw DomainError("symbolic power of the zero ideal");
  if (!is_squarefree(ideal)) throw CapabilityError("symbolic powers need a squarefree ideal");
  MonomialIdeal result = MonomialIdeal::unit(ideal.vars());
  for (const auto& cover : minimal_vertex_covers(ideal)) {
    std::vector<Monomial> prime;
    for (auto i : cover) {
      std::vector<Exponent> e(ideal.vars(), 0);
      e[i] = 1;
      prime.emplace_back(std::move(e));
    }
    result = intersect(result, power(MonomialIdeal::from_generators(ideal.vars(), prime), n));
  }
  return result;
}

bool is_integrally_closed(const MonomialIdeal& ideal) {
  if (ideal.is_zero()) return true;
  return same_ideal(MonomialIdeal::from_generators(ideal.vars(), ideal.materialized()),
                    integral_closure(ideal, 1));
}

bool is_normal(const MonomialIdeal& ideal) {
  if (ideal.is_zero() || ideal.is_unit()) return true;
  const Exponent top = std::max<Exponent>(1, static_cast<Exponent>(ideal.vars()) - 1);
  MonomialIdeal base = MonomialIdeal::from_generators(ideal.vars(), ideal.materialized());
  MonomialIdeal p = base;
  for (Exponent k = 1; k <= top; ++k) {
    if (k > 1) p = multiply(p, base);
    if (!same_ideal(p, integral_closure(base, k))) return false;
  }
  return true;
}

BequivConstant bequiv_constant(PowerFamilyKind kind, const MonomialIdeal& ideal, std::size_t horizon) {
  BequivConstant out;
  out.horizon = horizon;
  if (kind == PowerFamilyKind::Powers) return out;
  if (ideal.is_zero()) throw DomainError("closure family of the zero ideal");
  out.certified = std::max<Exponent>(0, static_cast<Exponent>(ideal.vars()) - 1);
  out.tightened = out.certified;
  MonomialIdeal base = MonomialIdeal::from_generators(ideal.vars(), ideal.materialized());
  std::vector<MonomialIdeal> powers{MonomialIdeal::unit(ideal.vars())};
  for (std::size_t i = 1; i <= horizon; ++i) powers.push_back(multiply(powers.back(), base));
  for (Exponent k = out.certified - 1; k >= 0; --k) {
    bool ok = true;
    for (std::size_t i = 1; i <= horizon && ok; ++i) {
      ok = is_subset(integral_closure(base, static_cast<Exponent>(i) + k), powers[i]);
    }
    if (!ok) break;
    out.tightened = k;
    out.tightened_by_window = true;
  }
  return out;
}

}  // namespace resurgence
