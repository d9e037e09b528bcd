#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resurgence/polyhedron.hpp"

namespace resurgence {

using Exponent = std::int64_t;

/// Checked exponent arithmetic; throws OverflowError.
Exponent checked_add(Exponent a, Exponent b);
Exponent checked_mul(Exponent a, Exponent b);

/// x^a for a nonnegative exponent vector a.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Exponent> exponents);

  static Monomial one(std::size_t vars);

  std::size_t vars() const { return e_.size(); }
  Exponent operator[](std::size_t i) const { return e_[i]; }
  std::span<const Exponent> exponents() const { return e_; }
  Exponent degree() const;
  bool is_one() const;

  bool divides(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> e_;
};

enum class IdealView { Explicit, Symbolic, Closure };

/// Membership data of a symbolic power of a squarefree ideal: sum over each cover >= power.
struct SymbolicData {
  std::vector<std::vector<std::size_t>> covers;
  Exponent power = 1;
};

/// Membership data of the closure of I^scale: the exponent lies in scale * NP(I).
struct ClosureData {
  std::shared_ptr<const RationalPolyhedron> polyhedron;
  Exponent scale = 1;
  /// Componentwise bound on minimal generators, used for materialization.
  std::vector<Exponent> box;
};

/// A monomial ideal, either by minimal generators or by a membership view.
///
/// Values are immutable. Generators of views are materialized at most once,
/// on first request, and shared by copies.
class MonomialIdeal {
 public:
  static constexpr std::size_t kDefaultCap = 100000;

  MonomialIdeal();

  static MonomialIdeal zero(std::size_t vars);
  static MonomialIdeal unit(std::size_t vars);
  static MonomialIdeal from_generators(std::size_t vars, std::vector<Monomial> generators);
  static MonomialIdeal symbolic_view(std::size_t vars, SymbolicData data);
  static MonomialIdeal closure_view(std::size_t vars, ClosureData data);

  IdealView view() const;
  std::size_t vars() const;
  bool is_zero() const;
  bool is_unit() const;

  /// Minimal generators of an explicit ideal; RepresentationError for views.
  const std::vector<Monomial>& generators() const;

  /// Minimal generators for any view, enumerating lattice points when needed.
  const std::vector<Monomial>& materialized(std::size_t cap = kDefaultCap) const;

  const SymbolicData* symbolic() const;
  const ClosureData* closure() const;

  bool contains(const Monomial& m) const;

  std::string to_string() const;

 private:
  struct Impl;
  explicit MonomialIdeal(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

/// Divisibility-minimal subset, sorted lexicographically.
std::vector<Monomial> minimize(std::vector<Monomial> generators);

MonomialIdeal multiply(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal power(const MonomialIdeal& a, Exponent n);
MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b);

bool is_subset(const MonomialIdeal& a, const MonomialIdeal& b);

/// A minimal generator of `a` outside `b`, if any.
std::optional<Monomial> containment_witness(const MonomialIdeal& a, const MonomialIdeal& b);

/// Equality of the generated ideals (views are materialized).
bool same_ideal(const MonomialIdeal& a, const MonomialIdeal& b);

Monomial monomial_of(std::initializer_list<Exponent> exponents);
MonomialIdeal ideal_of(std::size_t vars, std::initializer_list<std::initializer_list<Exponent>> generators);

}  // namespace resurgence
