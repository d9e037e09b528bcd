#include "resurgence/polyhedron.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "resurgence/errors.hpp"

namespace resurgence {

namespace {

Integer dot(const IntegerVector& a, const IntegerVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void make_primitive(IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (g == 0 || g == 1) return;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

bool is_zero(const IntegerVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// Clears denominators; returns the positive factor that was applied.
IntegerVector clear_denominators(const RationalVector& v, Integer& factor) {
  factor = 1;
  for (const auto& x : v) {
    mpz_lcm(factor.get_mpz_t(), factor.get_mpz_t(), x.get_den_mpz_t());
  }
  IntegerVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = (factor / v[i].get_den()) * v[i].get_num();
  }
  return out;
}

bool fits_small(const Integer& x, long bound) {
  return x.fits_slong_p() && x.get_si() < bound && x.get_si() > -bound;
}

}  // namespace

HalfSpace::HalfSpace(const RationalVector& normal, const Rational& offset) {
  Integer factor;
  IntegerVector n = clear_denominators(normal, factor);
  normalize(std::move(n), Rational(factor), offset);
}

HalfSpace::HalfSpace(const IntegerVector& normal, const Rational& offset) {
  normalize(normal, Rational(1), offset);
}

void HalfSpace::normalize(IntegerVector normal, const Rational& scale_back, const Rational& offset) {
  if (normal.empty() || is_zero(normal)) throw DomainError("halfspace normal is the zero vector");
  Integer g = 0;
  for (const auto& x : normal) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (auto& x : normal) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  normal_ = std::move(normal);
  offset_ = offset * scale_back / Rational(g);
  offset_.canonicalize();
}

bool HalfSpace::contains(const RationalVector& point) const {
  if (point.size() != normal_.size()) throw DimensionError("point dimension does not match halfspace");
  Rational s = 0;
  for (std::size_t i = 0; i < point.size(); ++i) s += Rational(normal_[i]) * point[i];
  return s >= offset_;
}

bool HalfSpace::has_nonnegative_normal() const {
  return std::all_of(normal_.begin(), normal_.end(), [](const Integer& x) { return x >= 0; });
}

bool HalfSpace::is_valuation_candidate() const { return has_nonnegative_normal() && offset_ > 0; }

std::string HalfSpace::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < normal_.size(); ++i) {
    if (i) os << ",";
    os << normal_[i].get_str();
  }
  os << ") >= " << offset_.get_str();
  return os.str();
}

bool operator==(const HalfSpace& a, const HalfSpace& b) {
  return a.normal_ == b.normal_ && a.offset_ == b.offset_;
}

bool operator<(const HalfSpace& a, const HalfSpace& b) {
  if (a.normal_ != b.normal_) {
    return std::lexicographical_compare(a.normal_.begin(), a.normal_.end(), b.normal_.begin(),
                                        b.normal_.end());
  }
  return a.offset_ < b.offset_;
}

RationalPolyhedron::RationalPolyhedron(std::size_t dim, std::vector<HalfSpace> halfspaces,
                                       std::vector<RationalVector> vertices,
                                       std::vector<RationalVector> recession_rays)
    : dim_(dim),
      halfspaces_(std::move(halfspaces)),
      vertices_(std::move(vertices)),
      rays_(std::move(recession_rays)) {
  for (const auto& h : halfspaces_) {
    if (h.dim() != dim_) throw DimensionError("halfspace dimension does not match polyhedron");
  }
  constexpr long kSmall = 1L << 31;
  for (const auto& h : halfspaces_) {
    FastRow row;
    row.usable = fits_small(h.offset().get_den(), kSmall) && h.offset().get_num().fits_slong_p();
    for (const auto& x : h.normal()) {
      if (!fits_small(x, kSmall)) row.usable = false;
      row.normal.push_back(row.usable ? x.get_si() : 0);
    }
    if (row.usable) {
      row.offset_num = h.offset().get_num().get_si();
      row.offset_den = h.offset().get_den().get_si();
    }
    fast_.push_back(std::move(row));
  }
}

bool RationalPolyhedron::member(const RationalVector& y) const {
  if (y.size() != dim_) throw DimensionError("point dimension does not match polyhedron");
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const HalfSpace& h) { return h.contains(y); });
}

bool RationalPolyhedron::member_scaled(std::span<const std::int64_t> point, std::int64_t scale) const {
  if (point.size() != dim_) throw DimensionError("point dimension does not match polyhedron");
  for (std::size_t k = 0; k < halfspaces_.size(); ++k) {
    const FastRow& row = fast_[k];
    bool small = row.usable && scale >= 0 && scale < (std::int64_t{1} << 62);
    for (auto a : point) small = small && a >= 0 && a < (std::int64_t{1} << 62);
    if (small) {
      __int128 s = 0;
      for (std::size_t i = 0; i < dim_; ++i) s += static_cast<__int128>(row.normal[i]) * point[i];
      if (s * row.offset_den < static_cast<__int128>(scale) * row.offset_num) return false;
      continue;
    }
    const HalfSpace& h = halfspaces_[k];
    Integer s = 0;
    for (std::size_t i = 0; i < dim_; ++i) s += h.normal()[i] * Integer(static_cast<long>(point[i]));
    if (Rational(s) < h.offset() * Rational(Integer(static_cast<long>(scale)))) return false;
  }
  return true;
}

std::vector<HalfSpace> RationalPolyhedron::valuation_candidates() const {
  std::vector<HalfSpace> out;
  for (const auto& h : halfspaces_) {
    if (h.is_valuation_candidate()) out.push_back(h);
  }
  return out;
}

std::size_t rational_rank(const std::vector<RationalVector>& rows) {
  if (rows.empty()) return 0;
  std::vector<RationalVector> m = rows;
  std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

namespace {

struct DdRay {
  IntegerVector v;
  std::vector<bool> tight;  // tight[j]: constraint j is saturated
};

}  // namespace

RationalPolyhedron hull_with_recession(const std::vector<RationalVector>& points,
                                       const std::vector<RationalVector>& rays,
                                       const HullOptions& options) {
  if (points.empty()) throw DomainError("hull of an empty point set");
  const std::size_t n = points[0].size();
  if (n == 0) throw DimensionError("points must have positive dimension");
  if (n > options.max_dim) throw CapabilityError("hull dimension exceeds the configured maximum");
  for (const auto& p : points) {
    if (p.size() != n) throw DimensionError("hull points of different dimensions");
  }
  for (const auto& r : rays) {
    if (r.size() != n) throw DimensionError("hull ray dimension does not match points");
  }

  // Homogenized generators: the cone {(t, x)} spanned by (1, p) and (0, r).
  std::vector<IntegerVector> rows;
  for (const auto& p : points) {
    RationalVector h(n + 1);
    h[0] = 1;
    std::copy(p.begin(), p.end(), h.begin() + 1);
    Integer f;
    IntegerVector row = clear_denominators(h, f);
    make_primitive(row);
    rows.push_back(std::move(row));
  }
  for (const auto& r : rays) {
    RationalVector h(n + 1);
    h[0] = 0;
    std::copy(r.begin(), r.end(), h.begin() + 1);
    Integer f;
    IntegerVector row = clear_denominators(h, f);
    if (is_zero(row)) continue;
    make_primitive(row);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  // Double description of the dual cone {y : <row, y> >= 0 for all rows}.
  const std::size_t d = n + 1;
  std::vector<IntegerVector> lineality;
  for (std::size_t i = 0; i < d; ++i) {
    IntegerVector e(d, 0);
    e[i] = 1;
    lineality.push_back(std::move(e));
  }
  std::vector<DdRay> extreme;

  for (std::size_t j = 0; j < rows.size(); ++j) {
    const IntegerVector& a = rows[j];
    auto it = std::find_if(lineality.begin(), lineality.end(),
                           [&](const IntegerVector& l) { return dot(a, l) != 0; });
    if (it != lineality.end()) {
      IntegerVector l = *it;
      lineality.erase(it);
      Integer al = dot(a, l);
      if (al < 0) {
        for (auto& x : l) x = -x;
        al = -al;
      }
      for (auto& other : lineality) {
        Integer t = dot(a, other);
        if (t == 0) continue;
        for (std::size_t i = 0; i < d; ++i) other[i] = al * other[i] - t * l[i];
        make_primitive(other);
      }
      for (auto& r : extreme) {
        Integer t = dot(a, r.v);
        if (t != 0) {
          for (std::size_t i = 0; i < d; ++i) r.v[i] = al * r.v[i] - t * l[i];
          make_primitive(r.v);
        }
        r.tight.push_back(true);
      }
      DdRay fresh{l, std::vector<bool>(j, true)};
      fresh.tight.push_back(false);
      extreme.push_back(std::move(fresh));
      continue;
    }

    std::vector<Integer> value(extreme.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t r = 0; r < extreme.size(); ++r) {
      value[r] = dot(a, extreme[r].v);
      if (value[r] > 0) {
        pos.push_back(r);
      } else if (value[r] < 0) {
        neg.push_back(r);
      } else {
        zero.push_back(r);
      }
    }
    if (neg.empty()) {
      for (std::size_t r = 0; r < extreme.size(); ++r) extreme[r].tight.push_back(value[r] == 0);
      continue;
    }

    const std::size_t pointed_dim = d - lineality.size();
    std::vector<DdRay> next;
    for (auto r : pos) {
      next.push_back(extreme[r]);
      next.back().tight.push_back(false);
    }
    for (auto r : zero) {
      next.push_back(extreme[r]);
      next.back().tight.push_back(true);
    }
    for (auto p : pos) {
      for (auto q : neg) {
        std::vector<bool> common(j);
        std::size_t count = 0;
        for (std::size_t c = 0; c < j; ++c) {
          common[c] = extreme[p].tight[c] && extreme[q].tight[c];
          count += common[c];
        }
        if (pointed_dim >= 2 && count + 2 < pointed_dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < extreme.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool contains = true;
          for (std::size_t c = 0; c < j && contains; ++c) {
            if (common[c] && !extreme[r].tight[c]) contains = false;
          }
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        DdRay combo;
        combo.v.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
          combo.v[i] = value[p] * extreme[q].v[i] - value[q] * extreme[p].v[i];
        }
        make_primitive(combo.v);
        combo.tight = std::move(common);
        combo.tight.push_back(true);
        next.push_back(std::move(combo));
      }
    }
    extreme = std::move(next);
  }

  std::vector<HalfSpace> halfspaces;
  auto emit = [&](const IntegerVector& y) {
    IntegerVector w(y.begin() + 1, y.end());
    if (is_zero(w)) return;
    halfspaces.emplace_back(w, Rational(-y[0]));
  };
  for (const auto& r : extreme) emit(r.v);
  for (const auto& l : lineality) {
    emit(l);
    IntegerVector neg(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
    emit(neg);
  }
  std::sort(halfspaces.begin(), halfspaces.end());
  halfspaces.erase(std::unique(halfspaces.begin(), halfspaces.end()), halfspaces.end());

  std::vector<RationalVector> vertices;
  for (const auto& p : points) {
    std::vector<RationalVector> tight;
    for (const auto& h : halfspaces) {
      Rational s = 0;
      for (std::size_t i = 0; i < n; ++i) s += Rational(h.normal()[i]) * p[i];
      if (s == h.offset()) {
        RationalVector row;
        for (const auto& x : h.normal()) row.emplace_back(x);
        tight.push_back(std::move(row));
      }
    }
    if (rational_rank(tight) == n) vertices.push_back(p);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  return RationalPolyhedron(n, std::move(halfspaces), std::move(vertices), rays);
}

std::vector<std::vector<std::int64_t>> minimal_lattice_points(const RationalPolyhedron& polyhedron,
                                                              std::int64_t scale,
                                                              std::span<const std::int64_t> box,
                                                              std::size_t cap) {
  const std::size_t n = polyhedron.dim();
  if (box.size() + 1 != n && box.size() != n) {
    throw DimensionError("box must cover the leading coordinates");
  }
  for (const auto& h : polyhedron.halfspaces()) {
    if (!h.has_nonnegative_normal()) {
      throw CapabilityError("lattice enumeration needs an upward-closed polyhedron");
    }
  }
  double total = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) total *= static_cast<double>(box[i] + 1);
  if (total > static_cast<double>(cap)) {
    throw CapabilityError("lattice enumeration exceeds the candidate cap");
  }

  const Rational rscale(Integer(static_cast<long>(scale)));
  // Least last coordinate making `a` a member, or -1 when none exists.
  auto least_last = [&](std::vector<std::int64_t>& a) -> std::int64_t {
    Integer best = 0;
    for (const auto& h : polyhedron.halfspaces()) {
      Integer partial = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) partial += h.normal()[i] * Integer(static_cast<long>(a[i]));
      Rational need = h.offset() * rscale - Rational(partial);
      const Integer& wn = h.normal()[n - 1];
      if (wn == 0) {
        if (need > 0) return -1;
        continue;
      }
      Rational q = need / Rational(wn);
      Integer c;
      mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      if (c > best) best = c;
    }
    if (!best.fits_slong_p()) throw OverflowError("lattice coordinate out of range");
    return best.get_si();
  };

  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> a(n, 0);
  while (true) {
    std::int64_t last = least_last(a);
    if (last >= 0) {
      a[n - 1] = last;
      bool minimal = true;
      for (std::size_t i = 0; i + 1 < n && minimal; ++i) {
        if (a[i] == 0) continue;
        --a[i];
        if (polyhedron.member_scaled(a, scale)) minimal = false;
        ++a[i];
      }
      if (minimal) out.push_back(a);
    }
    std::size_t i = 0;
    while (i + 1 < n) {
      if (a[i] < box[i]) {
        ++a[i];
        break;
      }
      a[i] = 0;
      ++i;
    }
    if (i + 1 >= n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace resurgence
