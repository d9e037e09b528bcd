#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace resurgence {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// The closed halfspace <normal, y> >= offset.
///
/// Always stored normalized: the normal is a primitive integer vector (gcd of its
/// entries is 1) obtained by a positive rescaling, so two halfspaces describe the
/// same set exactly when they compare equal.
class HalfSpace {
 public:
  HalfSpace() = default;

  /// Normalizes (normal, offset). Throws DomainError for a zero normal.
  HalfSpace(const RationalVector& normal, const Rational& offset);
  HalfSpace(const IntegerVector& normal, const Rational& offset);

  const IntegerVector& normal() const { return normal_; }
  const Rational& offset() const { return offset_; }
  std::size_t dim() const { return normal_.size(); }

  bool contains(const RationalVector& point) const;

  /// Nonnegative normal with positive offset: the shape of a Rees-valuation facet.
  bool is_valuation_candidate() const;
  bool has_nonnegative_normal() const;

  std::string to_string() const;

  friend bool operator==(const HalfSpace& a, const HalfSpace& b);
  friend bool operator<(const HalfSpace& a, const HalfSpace& b);

 private:
  void normalize(IntegerVector normal, const Rational& scale_back, const Rational& offset);

  IntegerVector normal_;
  Rational offset_;
};

/// A convex polyhedron in H-representation, optionally carrying the V-data it was built from.
class RationalPolyhedron {
 public:
  RationalPolyhedron() = default;
  RationalPolyhedron(std::size_t dim, std::vector<HalfSpace> halfspaces,
                     std::vector<RationalVector> vertices = {},
                     std::vector<RationalVector> recession_rays = {});

  std::size_t dim() const { return dim_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  const std::vector<RationalVector>& recession_rays() const { return rays_; }

  bool member(const RationalVector& y) const;

  /// Membership of the lattice point `point` in scale * P.
  bool member_scaled(std::span<const std::int64_t> point, std::int64_t scale) const;

  /// Halfspaces whose normal is nonnegative and offset positive.
  std::vector<HalfSpace> valuation_candidates() const;

 private:
  struct FastRow {
    std::vector<std::int64_t> normal;
    std::int64_t offset_num = 0;
    std::int64_t offset_den = 1;
    bool usable = false;
  };

  std::size_t dim_ = 0;
  std::vector<HalfSpace> halfspaces_;
  std::vector<RationalVector> vertices_;
  std::vector<RationalVector> rays_;
  std::vector<FastRow> fast_;
};

struct HullOptions {
  std::size_t max_dim = 8;
};

/// Irredundant H-representation of conv(points) + cone(rays), computed by
/// incremental double description over exact integers.
RationalPolyhedron hull_with_recession(const std::vector<RationalVector>& points,
                                       const std::vector<RationalVector>& rays,
                                       const HullOptions& options = {});

/// Rank of a list of rational vectors.
std::size_t rational_rank(const std::vector<RationalVector>& rows);

/// Minimal lattice points of the upward-closed set {a in N^n : a in scale * P}.
///
/// Every halfspace of P must have a nonnegative normal. Candidates range over the
/// box [0, box[i]] in all but the last coordinate; the last coordinate of each
/// candidate is the least one that satisfies every halfspace. Throws
/// CapabilityError when the candidate count exceeds `cap`.
std::vector<std::vector<std::int64_t>> minimal_lattice_points(const RationalPolyhedron& polyhedron,
                                                              std::int64_t scale,
                                                              std::span<const std::int64_t> box,
                                                              std::size_t cap);

}  // namespace resurgence
