#pragma once

#include <memory>
#include <vector>

#include "resurgence/monomial.hpp"
#include "resurgence/polyhedron.hpp"

namespace resurgence {

struct ReesValuation {
  IntegerVector weights;
  Integer value;  // v(I)
};

struct ReesValuationSet {
  MonomialIdeal ideal;
  std::vector<ReesValuation> valuations;  // sorted by weights
};

/// conv(exponents) + orthant, cached per generator set.
std::shared_ptr<const RationalPolyhedron> newton_polyhedron(const MonomialIdeal& ideal);

/// Membership view of the integral closure of ideal^n.
MonomialIdeal integral_closure(const MonomialIdeal& ideal, Exponent n = 1);

ReesValuationSet rees_valuations(const MonomialIdeal& ideal);

bool is_squarefree(const MonomialIdeal& ideal);

/// Minimal vertex covers of the generator supports, each sorted, in lex order of their masks.
std::vector<std::vector<std::size_t>> minimal_vertex_covers(const MonomialIdeal& ideal);

/// Symbolic power of a squarefree ideal as a membership view.
MonomialIdeal symbolic_power(const MonomialIdeal& ideal, Exponent n);

/// The same ideal computed as an intersection of powers of the minimal primes.
MonomialIdeal symbolic_power_by_intersection(const MonomialIdeal& ideal, Exponent n);

bool is_integrally_closed(const MonomialIdeal& ideal);

/// I^k integrally closed for every k < vars (which suffices for all k).
bool is_normal(const MonomialIdeal& ideal);

enum class PowerFamilyKind { Powers, ClosurePowers };

struct BequivConstant {
  Exponent certified = 0;  // a-priori bound
  Exponent tightened = 0;  // smallest k passing the finite check
  std::size_t horizon = 0;
  bool tightened_by_window = false;
};

/// k with closure(I^{i+k}) (or I^{i+k}) inside I^i for every i.
BequivConstant bequiv_constant(PowerFamilyKind kind, const MonomialIdeal& ideal, std::size_t horizon = 6);

}  // namespace resurgence
