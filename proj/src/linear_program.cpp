#include "resurgence/linear_program.hpp"

#include "resurgence/errors.hpp"

namespace resurgence {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_(rows, RationalVector(cols + 1)) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][cols_]; }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational p = t_[pr][pc];
    for (auto& x : t_[pr]) x /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || t_[r][pc] == 0) continue;
      Rational f = t_[r][pc];
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (t_[pr][c] != 0) t_[r][c] -= f * t_[pr][c];
      }
    }
    basis[pr] = pc;
  }

  // Bland's rule. Returns false when the objective is unbounded below.
  bool optimize(const RationalVector& cost, const std::vector<bool>& allowed) {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_ && enter == cols_; ++c) {
        if (!allowed[c] || is_basic(c)) continue;
        Rational reduced = cost[c];
        for (std::size_t r = 0; r < rows_; ++r) reduced -= cost[basis[r]] * t_[r][c];
        if (reduced < 0) enter = c;
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (t_[r][enter] <= 0) continue;
        Rational ratio = t_[r][cols_] / t_[r][enter];
        if (leave == rows_ || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

  bool is_basic(std::size_t c) const {
    for (auto b : basis) {
      if (b == c) return true;
    }
    return false;
  }

  std::vector<std::size_t> basis;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RationalVector> t_;
};

Rational row_value(const HalfSpace& h, const RationalVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += Rational(h.normal()[i]) * y[i];
  return s;
}

}  // namespace

LpResult lp_minimize(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.constraints.size();
  for (const auto& h : lp.constraints) {
    if (h.dim() != n) throw DimensionError("constraint dimension does not match objective");
  }
  // Columns: structural variables (split when free), surplus, artificial.
  const std::size_t nv = lp.nonneg ? n : 2 * n;
  const std::size_t surplus0 = nv;
  const std::size_t art0 = nv + m;
  const std::size_t cols = nv + 2 * m;
  Tableau t(m, cols);
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const HalfSpace& h = lp.constraints[i];
    if (h.offset() < 0) sign[i] = -1;
    for (std::size_t j = 0; j < n; ++j) {
      Rational a(h.normal()[j] * sign[i]);
      t.at(i, j) = a;
      if (!lp.nonneg) t.at(i, n + j) = -a;
    }
    t.at(i, surplus0 + i) = -sign[i];
    t.at(i, art0 + i) = 1;
    t.rhs(i) = h.offset() * sign[i];
    t.basis.push_back(art0 + i);
  }

  std::vector<bool> allowed(cols, true);
  RationalVector phase1(cols, 0);
  for (std::size_t i = 0; i < m; ++i) phase1[art0 + i] = 1;
  t.optimize(phase1, allowed);
  Rational infeasibility = 0;
  for (std::size_t i = 0; i < m; ++i) infeasibility += phase1[t.basis[i]] * t.rhs(i);
  if (infeasibility > 0) return LpInfeasible{};

  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < art0) continue;
    for (std::size_t c = 0; c < art0; ++c) {
      if (t.at(i, c) != 0 && !t.is_basic(c)) {
        t.pivot(i, c);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) allowed[art0 + i] = false;

  RationalVector cost(cols, 0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = lp.objective[j];
    if (!lp.nonneg) cost[n + j] = -lp.objective[j];
  }
  if (!t.optimize(cost, allowed)) return LpUnbounded{};

  RationalVector x(cols, 0);
  for (std::size_t i = 0; i < m; ++i) x[t.basis[i]] = t.rhs(i);
  LpOptimum out;
  out.argmin.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.argmin[j] = lp.nonneg ? x[j] : x[j] - x[n + j];
  out.value = 0;
  for (std::size_t j = 0; j < n; ++j) out.value += lp.objective[j] * out.argmin[j];

  // pi = c_B B^{-1}; B^{-1} sits in the artificial columns.
  out.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational pi = 0;
    for (std::size_t r = 0; r < m; ++r) pi += cost[t.basis[r]] * t.at(r, art0 + i);
    out.dual[i] = pi * sign[i];
  }
  return out;
}

bool verify_certificate(const LinearProgram& lp, const LpOptimum& optimum) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.constraints.size();
  if (optimum.argmin.size() != n || optimum.dual.size() != m) return false;
  Rational primal = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.nonneg && optimum.argmin[j] < 0) return false;
    primal += lp.objective[j] * optimum.argmin[j];
  }
  if (primal != optimum.value) return false;
  Rational dual = 0;
  RationalVector reduced = lp.objective;
  for (std::size_t i = 0; i < m; ++i) {
    const HalfSpace& h = lp.constraints[i];
    if (row_value(h, optimum.argmin) < h.offset()) return false;
    if (optimum.dual[i] < 0) return false;
    dual += h.offset() * optimum.dual[i];
    for (std::size_t j = 0; j < n; ++j) reduced[j] -= Rational(h.normal()[j]) * optimum.dual[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.nonneg ? reduced[j] < 0 : reduced[j] != 0) return false;
  }
  return dual == optimum.value;
}

}  // namespace resurgence
