#pragma once

// Brute-force reference implementations used by the unit and acceptance tests.
// None of them call into the library's algorithms; they only read generators.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "resurgence/monomial.hpp"

namespace oracle {

using Exps = std::vector<std::int64_t>;
using Gens = std::vector<Exps>;

inline bool divides(const Exps& g, const Exps& m) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > m[i]) return false;
  }
  return true;
}

inline bool member(const Gens& gens, const Exps& m) {
  for (const auto& g : gens) {
    if (divides(g, m)) return true;
  }
  return false;
}

inline Gens product(const Gens& a, const Gens& b) {
  Gens out;
  for (const auto& g : a) {
    for (const auto& h : b) {
      Exps e(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) e[i] = g[i] + h[i];
      out.push_back(e);
    }
  }
  return out;
}

/// Drops duplicates and non-minimal exponents by pairwise divisibility.
inline Gens reduce(Gens g) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  Gens out;
  for (const auto& e : g) {
    bool minimal = true;
    for (const auto& f : g) minimal = minimal && (f == e || !divides(f, e));
    if (minimal) out.push_back(e);
  }
  return out;
}

inline Gens power(const Gens& a, int n, std::size_t vars) {
  Gens out{Exps(vars, 0)};
  for (int i = 0; i < n; ++i) out = reduce(product(out, a));
  return out;
}

/// Calls f on every exponent vector in [0, bound]^vars.
inline void for_box(std::size_t vars, std::int64_t bound, const std::function<void(const Exps&)>& f) {
  Exps e(vars, 0);
  while (true) {
    f(e);
    std::size_t i = 0;
    while (i < vars && e[i] == bound) e[i++] = 0;
    if (i == vars) return;
    ++e[i];
  }
}

/// Minimal elements of the upward-closed set given by `in`, found in a box.
inline Gens minimal_in_box(std::size_t vars, std::int64_t bound, const std::function<bool(const Exps&)>& in) {
  Gens all;
  for_box(vars, bound, [&](const Exps& e) {
    if (in(e)) all.push_back(e);
  });
  Gens out;
  for (const auto& e : all) {
    bool minimal = true;
    for (std::size_t i = 0; i < vars && minimal; ++i) {
      if (e[i] == 0) continue;
      Exps f = e;
      --f[i];
      if (in(f)) minimal = false;
    }
    if (minimal) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Gens sorted_exponents(const std::vector<resurgence::Monomial>& ms) {
  Gens out;
  for (const auto& m : ms) out.emplace_back(m.exponents().begin(), m.exponents().end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Every subset of variables meeting every generator support.
inline std::vector<std::vector<std::size_t>> all_covers(const Gens& gens, std::size_t vars) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 1; mask < (1u << vars); ++mask) {
    bool cover = true;
    for (const auto& g : gens) {
      bool hit = false;
      for (std::size_t i = 0; i < vars; ++i) hit = hit || (g[i] > 0 && (mask >> i & 1));
      cover = cover && hit;
    }
    if (!cover) continue;
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < vars; ++i) {
      if (mask >> i & 1) c.push_back(i);
    }
    out.push_back(c);
  }
  return out;
}

/// m in I^(n) for squarefree I: every cover carries weight at least n.
inline bool symbolic_member(const Gens& gens, std::size_t vars, std::int64_t n, const Exps& m) {
  for (const auto& c : all_covers(gens, vars)) {
    std::int64_t s = 0;
    for (auto i : c) s += m[i];
    if (s < n) return false;
  }
  return true;
}

/// m in the closure of I^scale for I in two variables: some point on a segment between two
/// generators (scaled) lies below m. Exact in rationals via cross-multiplication.
inline bool closure_member_2d(const Gens& gens, std::int64_t scale, const Exps& m) {
  for (const auto& p : gens) {
    for (const auto& q : gens) {
      // point p*scale + t*(q-p)*scale, t in [0,1]; need each coordinate <= m.
      // t in [lo, hi] as fractions with denominator d_i; track as doubles-free comparisons.
      std::int64_t lo_num = 0, lo_den = 1, hi_num = 1, hi_den = 1;
      bool ok = true;
      for (int i = 0; i < 2 && ok; ++i) {
        const std::int64_t base = p[i] * scale, slope = (q[i] - p[i]) * scale, rhs = m[i] - base;
        // slope * t <= rhs
        if (slope == 0) {
          ok = rhs >= 0;
        } else if (slope > 0) {
          // t <= rhs / slope
          if (rhs * hi_den < hi_num * slope) {
            hi_num = rhs;
            hi_den = slope;
          }
        } else {
          // t >= rhs / slope = (-rhs) / (-slope)
          if ((-rhs) * lo_den > lo_num * (-slope)) {
            lo_num = -rhs;
            lo_den = -slope;
          }
        }
      }
      if (ok && lo_num * hi_den <= hi_num * lo_den) return true;
    }
  }
  return false;
}

/// Hand-rolled generator of small random monomial ideals.
class IdealGen {
 public:
  explicit IdealGen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  Exps exponent(std::size_t vars, std::int64_t max_degree) {
    Exps e(vars, 0);
    std::int64_t budget = uniform(1, max_degree);
    for (std::int64_t k = 0; k < budget; ++k) ++e[static_cast<std::size_t>(uniform(0, vars - 1))];
    return e;
  }

  Gens ideal(std::size_t vars, std::int64_t max_degree, std::size_t max_gens) {
    Gens g;
    const auto count = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_gens)));
    for (std::size_t i = 0; i < count; ++i) g.push_back(exponent(vars, max_degree));
    return g;
  }

  /// Squarefree generators of degree 1 or 2.
  Gens squarefree(std::size_t vars, std::size_t max_gens) {
    Gens g;
    const auto count = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_gens)));
    for (std::size_t i = 0; i < count; ++i) {
      Exps e(vars, 0);
      e[static_cast<std::size_t>(uniform(0, vars - 1))] = 1;
      if (vars > 1 && uniform(0, 2) > 0) e[static_cast<std::size_t>(uniform(0, vars - 1))] = 1;
      g.push_back(e);
    }
    return g;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline resurgence::MonomialIdeal to_ideal(const Gens& gens, std::size_t vars) {
  std::vector<resurgence::Monomial> ms;
  for (const auto& g : gens) ms.emplace_back(g);
  return resurgence::MonomialIdeal::from_generators(vars, std::move(ms));
}

}  // namespace oracle
