#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "resurgence/closures.hpp"
#include "resurgence/monomial.hpp"

namespace resurgence {

class GradedFamily;
using FamilyPtr = std::shared_ptr<const GradedFamily>;

enum class FamilyKind { Powers, Symbolic, ClosurePowers, Ceiling, Table, Pattern, ClosureOf, Veronese };

std::string to_string(FamilyKind kind);

/// Integer exponent sequence e(n) used by table tails.
struct ExponentFn {
  enum class Kind { Linear, Sqrt, Log2 };
  Kind kind = Kind::Linear;
  Rational alpha = 1;  // Linear: ceil(alpha * n)

  Exponent operator()(std::int64_t n) const;
  /// Nondecreasing and subadditive.
  bool structurally_graded() const;
};

struct TableTail {
  enum class Kind { None, Constant, Power };
  Kind kind = Kind::None;
  MonomialIdeal ideal;
  ExponentFn exponent;
};

/// One factor of a pattern term: base^ceil((num*n + add)/den), or a member of a family at n + offset.
struct PatternFactor {
  enum class Kind { Base, Member };
  Kind kind = Kind::Base;
  MonomialIdeal base;
  std::int64_t num = 0;
  std::int64_t add = 1;
  std::int64_t den = 1;
  FamilyPtr family;  // null: the family being defined (offset must be negative)
  std::int64_t offset = 0;

  static PatternFactor constant(MonomialIdeal base);
  static PatternFactor affine(MonomialIdeal base, std::int64_t num, std::int64_t add, std::int64_t den);
  static PatternFactor member(FamilyPtr family, std::int64_t offset);
};

using PatternTerm = std::vector<PatternFactor>;   // product
using PatternExpr = std::vector<PatternTerm>;     // sum

struct Pattern {
  std::size_t period = 1;
  std::vector<PatternExpr> residues;  // residues[n % period]
  std::vector<MonomialIdeal> prefix;  // overrides for n = 1..prefix.size()
};

/// A lazily evaluated family {F_n}, with F_0 the unit ideal and F_n = (0) for n < 0.
class GradedFamily : public std::enable_shared_from_this<GradedFamily> {
 public:
  static FamilyPtr powers(const MonomialIdeal& ideal);
  static FamilyPtr symbolic(const MonomialIdeal& ideal);
  static FamilyPtr closure_powers(const MonomialIdeal& ideal);
  static FamilyPtr ceiling(const MonomialIdeal& ideal, const Rational& alpha);
  static FamilyPtr table(std::size_t vars, std::vector<MonomialIdeal> prefix, TableTail tail);
  static FamilyPtr constant(const MonomialIdeal& ideal);
  static FamilyPtr pattern(std::size_t vars, Pattern pattern);
  static FamilyPtr closure_of(const FamilyPtr& family);
  static FamilyPtr veronese(const FamilyPtr& family, std::int64_t k);

  FamilyKind kind() const { return kind_; }
  std::size_t vars() const { return vars_; }
  std::string describe() const;

  MonomialIdeal member(std::int64_t n) const;

  /// The base ideal of Powers, Symbolic, ClosurePowers and Ceiling families.
  const MonomialIdeal& base() const { return base_; }
  const Rational& alpha() const { return alpha_; }
  const std::vector<MonomialIdeal>& table_prefix() const { return prefix_; }
  const TableTail& tail() const { return tail_; }
  const Pattern& pattern_data() const { return pattern_; }
  const FamilyPtr& inner() const { return inner_; }
  std::int64_t veronese_k() const { return k_; }

  bool structural_filtration() const;
  bool structural_graded() const;
  /// F_n is the same ideal for all large n.
  bool constant_tail() const;
  /// A k with F_{kn} = F_k^n for every n that follows from the kind alone.
  std::optional<std::int64_t> structural_veronese() const;
  /// (b, k) with F_{i+k} inside b^i inside F_i for every i, from the kind alone.
  struct Bequiv {
    MonomialIdeal ideal;
    std::int64_t k = 0;
    bool by_window = false;
  };
  std::optional<Bequiv> structural_bequiv() const;
  /// Members are closures of ideals.
  bool closure_kind() const;

  GradedFamily(FamilyKind kind, std::size_t vars);

 private:
  MonomialIdeal compute(std::int64_t n) const;
  MonomialIdeal eval_factor(const PatternFactor& f, std::int64_t n) const;

  FamilyKind kind_;
  std::size_t vars_;
  MonomialIdeal base_;
  Rational alpha_ = 1;
  std::vector<MonomialIdeal> prefix_;
  TableTail tail_;
  Pattern pattern_;
  FamilyPtr inner_;
  std::int64_t k_ = 1;
  bool normal_base_ = false;
  SymbolicData covers_;

  mutable std::mutex mutex_;
  mutable std::map<std::int64_t, MonomialIdeal> cache_;
  mutable std::optional<Bequiv> bequiv_cache_;
  mutable bool bequiv_done_ = false;
};

enum class CertificateKind { Structural, Window, Asserted, Failed };

std::string to_string(CertificateKind kind);

struct Counterexample {
  std::vector<std::int64_t> indices;
  Monomial witness;
};

struct ValidationReport {
  std::string property;
  std::size_t horizon = 0;
  bool holds = false;
  CertificateKind certificate = CertificateKind::Window;
  std::optional<Counterexample> counterexample;
  std::string note;
};

/// F_p F_q inside F_{p+q} for p + q <= horizon.
ValidationReport validate_graded(const GradedFamily& family, std::size_t horizon);

/// F_{p+1} inside F_p for p < horizon.
ValidationReport validate_filtration(const GradedFamily& family, std::size_t horizon);

/// F_{kn} = F_k^n for n <= horizon.
ValidationReport is_standard_veronese(const GradedFamily& family, std::int64_t k, std::size_t horizon);

/// F_{i+k} inside b^i inside F_i for i <= horizon.
ValidationReport is_b_equivalent(const GradedFamily& family, const MonomialIdeal& b, std::int64_t k,
                                 std::size_t horizon);

}  // namespace resurgence
