#include "resurgence/resurgence.hpp"

#include <algorithm>
#include <set>

#include "resurgence/closures.hpp"
#include "resurgence/errors.hpp"

namespace resurgence {

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::RhoWindow: return "rho_window";
    case Quantity::RhoExact: return "rho_exact";
    case Quantity::RhoHatRees: return "rho_hat_rees";
    case Quantity::RhoHatBeta: return "rho_hat_beta";
    case Quantity::RhoN: return "rho_n";
    case Quantity::RhoLim: return "rho_lim";
    case Quantity::WaldschmidtRatio: return "waldschmidt_ratio";
  }
  return "unknown";
}

namespace {

Rational frac(std::int64_t num, std::int64_t den) { return ExtendedRational::ratio(num, den).value(); }

Rational frac(const Integer& num, std::int64_t den) {
  Rational q(num, Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

ExtendedRational scale(const ExtendedRational& x, std::int64_t k) {
  if (!x.is_finite()) return x;
  return ExtendedRational(x.value() * Rational(Integer(static_cast<long>(k))));
}

MonomialIdeal explicit_of(const MonomialIdeal& ideal) {
  if (ideal.view() == IdealView::Explicit) return ideal;
  return MonomialIdeal::from_generators(ideal.vars(), ideal.materialized());
}

/// First index from which all members coincide, when the kind fixes one.
std::optional<std::int64_t> constant_from(const GradedFamily& f) {
  switch (f.kind()) {
    case FamilyKind::Table:
      if (f.tail().kind == TableTail::Kind::Constant) return static_cast<std::int64_t>(f.table_prefix().size()) + 1;
      return std::nullopt;
    case FamilyKind::ClosureOf:
      return constant_from(*f.inner());
    case FamilyKind::Veronese: {
      auto t = constant_from(*f.inner());
      if (!t) return std::nullopt;
      return (*t + f.veronese_k() - 1) / f.veronese_k();
    }
    case FamilyKind::Powers:
    case FamilyKind::ClosurePowers:
    case FamilyKind::Ceiling:
      if (f.constant_tail()) return 1;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

void check_positive(std::int64_t x, const char* what) {
  if (x < 1) throw DomainError(std::string(what) + " must be positive");
}

bool use_binary(Search mode, bool monotone) {
  return mode == Search::Binary || (mode == Search::Auto && monotone);
}

/// Least d in [lo, hi] with fails(d), for a predicate that is monotone in d.
template <class F>
std::int64_t first_failure(std::int64_t lo, std::int64_t hi, F&& fails) {
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (fails(mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

template <class F>
SequenceValue inf_search(const GradedFamily& b, std::int64_t cutoff, bool binary, F&& fails) {
  std::optional<std::int64_t> found;
  if (binary) {
    if (fails(cutoff)) found = first_failure(1, cutoff, fails);
  } else {
    for (std::int64_t d = 1; d <= cutoff && !found; ++d) {
      if (fails(d)) found = d;
    }
  }
  if (found) return SequenceValue::finite(*found);
  if (auto t = constant_from(b); t && cutoff >= *t) return SequenceValue::empty();
  return SequenceValue::exceeds(cutoff);
}

template <class F>
SequenceValue sup_search(std::int64_t lowest, std::int64_t cutoff, bool binary, F&& fails) {
  if (fails(cutoff)) return SequenceValue::exceeds(cutoff);
  if (binary) {
    if (!fails(lowest)) return SequenceValue::empty();
    std::int64_t lo = lowest, hi = cutoff;  // fails(lo), !fails(hi)
    while (hi - lo > 1) {
      std::int64_t mid = lo + (hi - lo) / 2;
      if (fails(mid)) lo = mid;
      else hi = mid;
    }
    return SequenceValue::finite(lo);
  }
  for (std::int64_t d = cutoff - 1; d >= lowest; --d) {
    if (fails(d)) return SequenceValue::finite(d);
  }
  return SequenceValue::empty();
}

SearchParams params(std::int64_t s_max, std::int64_t r_max, std::int64_t cutoff, const SearchOptions& o) {
  return SearchParams{s_max, r_max, cutoff, o.horizon, o.kmax, o.window};
}

bool filtration_known(const GradedFamily& f, bool asserted) { return asserted || f.structural_filtration(); }

/// A standard Veronese index for b, with how it was obtained.
std::pair<std::optional<std::int64_t>, Hypothesis> find_veronese(const GradedFamily& b, const SearchOptions& o,
                                                                 const Assertions& assertions) {
  Hypothesis h{"standard_veronese", CertificateKind::Failed, static_cast<std::size_t>(o.horizon), ""};
  if (auto k = b.structural_veronese()) {
    h.status = CertificateKind::Structural;
    h.note = "k = " + std::to_string(*k) + " from the family kind";
    return {k, h};
  }
  if (assertions.b_veronese) {
    h.status = CertificateKind::Asserted;
    h.note = "k = " + std::to_string(*assertions.b_veronese) + " asserted";
    return {assertions.b_veronese, h};
  }
  for (std::int64_t k = 1; k <= o.kmax; ++k) {
    if (is_standard_veronese(b, k, static_cast<std::size_t>(o.horizon)).holds) {
      h.status = CertificateKind::Window;
      h.note = "b_{kn} = b_k^n checked for n <= " + std::to_string(o.horizon) + " with k = " + std::to_string(k);
      return {k, h};
    }
  }
  h.note = "no k <= " + std::to_string(o.kmax) + " with b_{kn} = b_k^n on the horizon";
  return {std::nullopt, h};
}

bool finitely_generated_kind(const GradedFamily& b) {
  return b.kind() == FamilyKind::Powers || b.kind() == FamilyKind::ClosurePowers || b.kind() == FamilyKind::Ceiling;
}

bool firm(CertificateKind k) { return k == CertificateKind::Structural || k == CertificateKind::Asserted; }

struct ReesMax {
  ExtendedRational value;
  MonomialValuation maximizer;
  bool certified = true;
};

/// max over w in RV(ideal) of (w(ideal) / k) / w_hat(a).
ReesMax rees_maximum(const GradedFamily& a, const MonomialIdeal& ideal, std::int64_t k, const SearchOptions& o) {
  ReesValuationSet rv = rees_valuations(explicit_of(ideal));
  if (rv.valuations.empty()) throw CapabilityError("b_k has no Rees valuations (unit ideal)");
  std::optional<ReesMax> best;
  for (const auto& val : rv.valuations) {
    MonomialValuation w(val.weights);
    WaldschmidtResult wh = skew_waldschmidt(w, a, static_cast<std::size_t>(o.window), std::nullopt, o.kmax);
    if (!wh.certified) {
      throw CapabilityError("skew Waldschmidt constant of a at " + w.to_string() +
                            " is not certified; use rho_hat_beta");
    }
    ExtendedRational ratio = ExtendedRational::pos_inf();
    if (wh.value() != 0) ratio = ExtendedRational(frac(val.value, k) / wh.value());
    if (!best || best->value < ratio) best = ReesMax{ratio, w, true};
  }
  return *best;
}

}  // namespace

SequenceValue beta(const GradedFamily& a, const GradedFamily& b, std::int64_t s, std::int64_t cutoff, Search mode) {
  check_positive(s, "s");
  check_positive(cutoff, "cutoff");
  if (a.vars() != b.vars()) throw DimensionError("families have different numbers of variables");
  const MonomialIdeal as = a.member(s);
  auto fails = [&](std::int64_t d) { return !is_subset(as, b.member(d)); };
  return inf_search(b, cutoff, use_binary(mode, b.structural_filtration()), fails);
}

SequenceValue lambda(const GradedFamily& a, const GradedFamily& b, std::int64_t n, std::int64_t cutoff, Search mode) {
  check_positive(n, "n");
  check_positive(cutoff, "cutoff");
  if (a.vars() != b.vars()) throw DimensionError("families have different numbers of variables");
  const MonomialIdeal bn = b.member(n);
  auto fails = [&](std::int64_t d) { return !is_subset(a.member(d), bn); };
  return sup_search(1, cutoff, use_binary(mode, a.structural_filtration()), fails);
}

SequenceValue beta_v(const MonomialValuation& v, const GradedFamily& a, const GradedFamily& b, std::int64_t n,
                     std::int64_t cutoff, Search mode) {
  check_positive(n, "n");
  check_positive(cutoff, "cutoff");
  if (v.vars() != a.vars() || a.vars() != b.vars()) throw DimensionError("valuation and families differ in length");
  const Integer target = family_value(v, a, n);
  auto fails = [&](std::int64_t d) { return target < family_value(v, b, d); };
  return inf_search(b, cutoff, use_binary(mode, b.structural_filtration()), fails);
}

SequenceValue lambda_v(const MonomialValuation& v, const GradedFamily& a, const GradedFamily& b, std::int64_t n,
                       std::int64_t cutoff, Search mode) {
  check_positive(n, "n");
  check_positive(cutoff, "cutoff");
  if (v.vars() != a.vars() || a.vars() != b.vars()) throw DimensionError("valuation and families differ in length");
  const Integer target = family_value(v, b, n);
  auto fails = [&](std::int64_t d) { return family_value(v, a, d) < target; };
  return sup_search(0, cutoff, use_binary(mode, a.structural_filtration()), fails);
}

DualSequences dual_sequences(const IntegerWindow& alpha, const IntegerWindow& beta) {
  if (alpha.values.empty()) throw DomainError("alpha window is empty");
  DualSequences out;
  out.start = beta.start;
  const std::int64_t last = alpha.start + static_cast<std::int64_t>(alpha.values.size()) - 1;
  for (const auto& bn : beta.values) {
    std::optional<std::int64_t> left;
    for (std::size_t i = 0; i < alpha.values.size() && !left; ++i) {
      if (alpha.values[i] >= bn) left = alpha.start + static_cast<std::int64_t>(i);
    }
    out.left.push_back(left ? SequenceValue::finite(*left) : SequenceValue::exceeds(last));

    if (alpha.nondecreasing && alpha.values.back() > bn) {
      std::optional<std::int64_t> right;
      for (std::size_t i = 0; i < alpha.values.size(); ++i) {
        if (alpha.values[i] <= bn) right = alpha.start + static_cast<std::int64_t>(i);
      }
      out.right.push_back(right ? SequenceValue::finite(*right) : SequenceValue::empty());
    } else {
      out.right.push_back(SequenceValue::exceeds(last));
    }
  }
  return out;
}

std::vector<NcEntry> nc_table(const GradedFamily& a, const GradedFamily& b, std::int64_t s_max, std::int64_t cutoff,
                              Search mode) {
  check_positive(s_max, "s_max");
  std::vector<NcEntry> out;
  for (std::int64_t s = 1; s <= s_max; ++s) {
    NcEntry e{s, beta(a, b, s, cutoff, mode), std::nullopt};
    if (e.beta.is_finite()) e.witness = containment_witness(a.member(s), b.member(e.beta.value()));
    out.push_back(std::move(e));
  }
  return out;
}

ResurgenceReport rho_window(const GradedFamily& a, const GradedFamily& b, std::int64_t s_max, std::int64_t r_max,
                            Search mode) {
  check_positive(r_max, "r_max");
  ResurgenceReport rep;
  rep.quantity = Quantity::RhoWindow;
  rep.search = SearchParams{s_max, r_max, r_max, 0, 0, 0};
  std::optional<std::size_t> best;
  auto table = nc_table(a, b, s_max, r_max, mode);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& e = table[i];
    if (!e.beta.is_finite()) {
      rep.series.push_back({e.s, ExtendedRational::neg_inf(), e.beta.to_string()});
      continue;
    }
    ExtendedRational q = ExtendedRational::ratio(e.s, e.beta.value());
    rep.series.push_back({e.s, q, "finite"});
    if (!best || rep.value < q) {
      best = i;
      rep.value = q;
    }
  }
  if (best) {
    rep.witnesses.push_back({table[*best].s, table[*best].beta.value(), *table[*best].witness});
    rep.labels.push_back("lower bound for rho(a, b)");
    return rep;
  }
  // No non-containment at all: certified when every distinct b_i contains a_1.
  if (auto t = constant_from(b); t && a.structural_filtration()) {
    bool all = true;
    for (std::int64_t i = 1; i <= *t && all; ++i) all = is_subset(a.member(1), b.member(i));
    if (all) {
      rep.certified = true;
      rep.labels.push_back("= rho(a, b)");
      rep.notes.push_back("a_1 lies in every member of b");
      return rep;
    }
  }
  rep.labels.push_back("lower bound for rho(a, b)");
  rep.notes.push_back("no non-containment in the window");
  return rep;
}

ResurgenceReport rho_n(const GradedFamily& a, const GradedFamily& b, std::int64_t n, std::int64_t s_max,
                       std::int64_t cutoff, Search mode) {
  check_positive(n, "n");
  ResurgenceReport rep;
  rep.quantity = Quantity::RhoN;
  rep.search = SearchParams{s_max, cutoff, cutoff, 0, 0, 0};
  for (std::int64_t s = n; s <= s_max; ++s) {
    SequenceValue bs = beta(a, b, s, cutoff, mode);
    if (!bs.is_finite()) continue;
    ExtendedRational q = ExtendedRational::ratio(s, bs.value());
    if (rep.value < q) {
      rep.value = q;
      rep.witnesses = {{s, bs.value(), *containment_witness(a.member(s), b.member(bs.value()))}};
    }
  }
  rep.labels.push_back("sup over n <= s <= s_max");
  return rep;
}

ResurgenceReport rho_lim_estimate(const GradedFamily& a, const GradedFamily& b, const std::vector<std::int64_t>& grid,
                                  std::int64_t s_max, std::int64_t cutoff, const SearchOptions& options,
                                  const Assertions& assertions) {
  if (grid.empty()) throw DomainError("grid is empty");
  ResurgenceReport rep;
  rep.quantity = Quantity::RhoLim;
  rep.search = params(s_max, cutoff, cutoff, options);
  auto table = nc_table(a, b, s_max, cutoff);
  bool nonincreasing = true;
  std::optional<ExtendedRational> prev;
  for (std::int64_t n : grid) {
    check_positive(n, "grid index");
    ExtendedRational best;
    for (const auto& e : table) {
      if (e.s >= n && e.beta.is_finite()) best = std::max(best, ExtendedRational::ratio(e.s, e.beta.value()));
    }
    if (prev && *prev < best) nonincreasing = false;
    prev = best;
    rep.series.push_back({n, best, "rho_n"});
  }
  rep.value = rep.series.back().value;
  rep.notes.push_back(nonincreasing ? "observed trend: nonincreasing" : "observed trend: not monotone");

  const bool a_filt = filtration_known(a, assertions.a_filtration);
  if (a.structural_filtration()) {
    rep.hypotheses.push_back({"a_filtration", CertificateKind::Structural, 0, ""});
  } else if (assertions.a_filtration) {
    rep.hypotheses.push_back({"a_filtration", CertificateKind::Asserted, 0, ""});
    rep.assertions_used.push_back("a_filtration");
  }
  if (a_filt && b.structural_bequiv()) {
    try {
      ResurgenceReport rees = rho_hat_rees(a, b, options, assertions);
      if (rees.certified) {
        rep.notes.push_back("last grid value " + rep.value.to_string());
        rep.value = rees.value;
        rep.certified = true;
        rep.maximizer = rees.maximizer;
        rep.labels.push_back("= lim rho^n(a, b) = rho_hat(a, closure(b))");
        for (auto& h : rees.hypotheses) rep.hypotheses.push_back(h);
        return rep;
      }
    } catch (const CapabilityError& e) {
      rep.notes.push_back(std::string("closed form unavailable: ") + e.what());
    }
  }
  rep.labels.push_back("estimate of lim rho^n(a, b)");
  return rep;
}

ResurgenceReport rho_hat_rees(const GradedFamily& a, const GradedFamily& b, const SearchOptions& options,
                              const Assertions& assertions) {
  if (a.vars() != b.vars()) throw DimensionError("families have different numbers of variables");
  ResurgenceReport rep;
  rep.quantity = Quantity::RhoHatRees;
  rep.search = params(0, 0, 0, options);
  auto [k, vh] = find_veronese(b, options, assertions);
  rep.hypotheses.push_back(vh);
  if (!k) throw CapabilityError(vh.note + "; use rho_hat_beta");
  if (vh.status == CertificateKind::Asserted) rep.assertions_used.push_back("b_veronese");

  ReesMax m = rees_maximum(a, b.member(*k), *k, options);
  rep.value = m.value;
  rep.maximizer = m.maximizer;
  rep.certified = firm(vh.status);
  rep.labels.push_back("= rho_hat(a, closure(b))");
  if (finitely_generated_kind(b)) {
    rep.hypotheses.push_back({"finite_generation", CertificateKind::Structural, 0, "from the family kind"});
    rep.labels.push_back("= rho_hat(a, b)");
  } else if (assertions.finite_generation) {
    rep.hypotheses.push_back({"finite_generation", CertificateKind::Asserted, 0, ""});
    rep.assertions_used.push_back("finite_generation");
    rep.labels.push_back("= rho_hat(a, b) (certified-given-assertions)");
  }
  if (*k != 1 && !b.member(1).is_unit()) {
    try {
      ReesMax first = rees_maximum(a, b.member(1), 1, options);
      std::string note = "maximum over RV(b_1): " + first.value.to_string();
      if (!(first.value == m.value)) note += " (differs from RV(b_k))";
      rep.notes.push_back(note);
    } catch (const CapabilityError& e) {
      rep.notes.push_back(std::string("RV(b_1) comparison skipped: ") + e.what());
    }
  }
  if (!rep.assertions_used.empty()) rep.labels.push_back("certified-given-assertions");
  return rep;
}

ResurgenceReport rho_hat_beta_limit(const GradedFamily& a, const GradedFamily& b, std::int64_t n,
                                    std::int64_t cutoff, const SearchOptions& options, const Assertions& assertions) {
  check_positive(n, "n");
  ResurgenceReport rep;
  rep.quantity = Quantity::RhoHatBeta;
  rep.search = params(n, cutoff, cutoff, options);
  const bool b_filt = filtration_known(b, assertions.b_filtration);
  const Search mode = b_filt ? Search::Binary : Search::Linear;
  if (assertions.b_filtration && !b.structural_filtration()) rep.assertions_used.push_back("b_filtration");
  rep.hypotheses.push_back({"b_filtration",
                            b.structural_filtration() ? CertificateKind::Structural
                            : assertions.b_filtration ? CertificateKind::Asserted
                                                      : CertificateKind::Failed,
                            0, ""});
  auto [k, vh] = find_veronese(b, options, assertions);
  rep.hypotheses.push_back(vh);

  FamilyPtr bar = GradedFamily::closure_of(b.shared_from_this());
  std::optional<MonomialValuation> v0;
  try {
    v0 = rho_hat_rees(a, b, options, assertions).maximizer;
  } catch (const CapabilityError&) {
    ReesValuationSet rv = rees_valuations(explicit_of(b.member(1)));
    if (!rv.valuations.empty()) v0 = MonomialValuation(rv.valuations.front().weights);
  }
  if (v0) {
    rep.maximizer = v0;
    rep.notes.push_back("v0 = " + v0->to_string());
  }

  std::set<std::int64_t> points{std::max<std::int64_t>(1, n / 4), std::max<std::int64_t>(1, n / 2), n};
  for (std::int64_t m : points) {
    auto ratio = [&](const SequenceValue& s) {
      return s.is_finite() ? ExtendedRational::ratio(m, s.value()) : ExtendedRational::neg_inf();
    };
    SequenceValue bm = beta(a, b, m, cutoff, mode);
    if (m == n) {
      if (!bm.is_finite()) throw CapabilityError("beta_" + std::to_string(n) + " is " + bm.to_string());
      rep.value = ratio(bm);
      rep.witnesses.push_back({n, bm.value(), *containment_witness(a.member(n), b.member(bm.value()))});
    }
    rep.series.push_back({m, ratio(bm), "beta"});
    rep.series.push_back({m, ratio(beta(a, *bar, m, cutoff, mode)), "beta_bar"});
    if (v0) rep.series.push_back({m, ratio(beta_v(*v0, a, b, m, cutoff, mode)), "beta_v0"});
  }
  rep.labels.push_back("estimate of rho_hat(a, b) from n / beta_n");
  return rep;
}

ResurgenceReport rho_exact_certified(const GradedFamily& a, const GradedFamily& b, const SearchOptions& options,
                                     const Assertions& assertions) {
  if (a.vars() != b.vars()) throw DimensionError("families have different numbers of variables");
  ResurgenceReport rep;
  rep.quantity = Quantity::RhoExact;
  rep.search = params(options.budget, options.budget, options.budget, options);

  // rho_hat(a, closure(b)).
  ExtendedRational rho_hat;
  Hypothesis hh{"rho_hat", CertificateKind::Failed, 0, ""};
  if (assertions.rho_hat) {
    rho_hat = *assertions.rho_hat;
    hh.status = CertificateKind::Asserted;
    hh.note = "asserted " + rho_hat.to_string();
    rep.assertions_used.push_back("rho_hat");
  } else {
    ResurgenceReport rees = rho_hat_rees(a, b, options, assertions);
    rho_hat = rees.value;
    rep.maximizer = rees.maximizer;
    hh.status = rees.certified ? CertificateKind::Structural : CertificateKind::Window;
    hh.note = "from Rees valuations: " + rho_hat.to_string();
    for (const auto& s : rees.assertions_used) rep.assertions_used.push_back(s);
  }
  rep.hypotheses.push_back(hh);

  if (!rho_hat.is_finite()) {
    rep.value = rho_hat;
    if (rho_hat.tag() == ExtendedRational::Tag::PosInfinity) {
      rep.certified = firm(hh.status);
      rep.labels.push_back("= rho(a, b), since rho >= rho_hat");
    } else {
      rep.notes.push_back("rho_hat is -inf; the reduction does not apply");
    }
    return rep;
  }

  // v_hat(b) = v(b_1) on RV(b_1).
  Hypothesis hv{"valuation_equality", CertificateKind::Failed, static_cast<std::size_t>(options.window), ""};
  if (b.structural_bequiv()) {
    hv.status = CertificateKind::Structural;
    hv.note = "b is b-equivalent to powers of an ideal";
  } else if (assertions.valuation_equality) {
    hv.status = CertificateKind::Asserted;
    rep.assertions_used.push_back("valuation_equality");
  } else {
    hv.status = CertificateKind::Structural;
    for (const auto& val : rees_valuations(explicit_of(b.member(1))).valuations) {
      MonomialValuation w(val.weights);
      WaldschmidtResult wh = skew_waldschmidt(w, b, static_cast<std::size_t>(options.window), assertions.b_veronese,
                                              options.kmax);
      if (wh.upper < Rational(val.value)) {
        hv.status = CertificateKind::Failed;
        hv.note = "v_hat < v(b_1) at " + w.to_string();
        break;
      }
      if (!wh.certified) hv.status = CertificateKind::Window;
    }
  }
  rep.hypotheses.push_back(hv);

  // Gap k with closure(b_{i+k}) inside b_i.
  Hypothesis hg{"closure_gap", CertificateKind::Failed, static_cast<std::size_t>(options.horizon), ""};
  std::optional<std::int64_t> gap;
  const std::int64_t vars = static_cast<std::int64_t>(b.vars());
  switch (b.kind()) {
    case FamilyKind::Powers:
      gap = std::max<std::int64_t>(1, vars - 1);
      break;
    case FamilyKind::ClosurePowers:
      gap = 1;
      break;
    case FamilyKind::Ceiling: {
      Rational q = Rational(Integer(static_cast<long>(vars - 1))) / b.alpha();
      Integer c;
      mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      gap = std::max<std::int64_t>(1, c.get_si());
      break;
    }
    default:
      break;
  }
  if (gap) {
    hg.status = CertificateKind::Structural;
  } else if (assertions.closure_gap) {
    gap = assertions.closure_gap;
    hg.status = CertificateKind::Asserted;
    rep.assertions_used.push_back("closure_gap");
  } else {
    for (std::int64_t k = 1; k <= options.kmax && !gap; ++k) {
      bool ok = true;
      for (std::int64_t i = 1; i <= options.horizon && ok; ++i) {
        ok = is_subset(integral_closure(explicit_of(b.member(i + k))), b.member(i));
      }
      if (ok) {
        gap = k;
        hg.status = CertificateKind::Window;
      }
    }
  }
  if (gap) hg.note = "k = " + std::to_string(*gap);
  rep.hypotheses.push_back(hg);

  // Smallest witness above rho_hat.
  std::optional<Witness> w0;
  for (std::int64_t t = 2; t <= options.budget && !w0; ++t) {
    for (std::int64_t r = 1; r < t && !w0; ++r) {
      const std::int64_t s = t - r;
      if (!(rho_hat < ExtendedRational::ratio(s, r))) continue;
      if (auto m = containment_witness(a.member(s), b.member(r))) w0 = Witness{s, r, *m};
    }
  }
  if (!w0) {
    rep.value = rho_hat;
    rep.notes.push_back("rho = rho_hat up to search budget");
    if (filtration_known(a, assertions.a_filtration) && b.structural_bequiv()) {
      rep.certified = firm(hh.status);
      rep.labels.push_back("= rho(a, closure(b))");
      if (b.closure_kind()) rep.labels.push_back("= rho(a, b)");
    } else {
      rep.labels.push_back("lower bound for rho(a, b)");
    }
    return rep;
  }
  if (!gap) {
    rep.value = ExtendedRational::ratio(w0->s, w0->r);
    rep.witnesses.push_back(*w0);
    rep.labels.push_back("lower bound for rho(a, b)");
    rep.notes.push_back("no closure gap found; the search region is unbounded");
    return rep;
  }

  const Rational q0 = frac(w0->s, w0->r);
  const Rational big_n = Rational(Integer(static_cast<long>(*gap))) * rho_hat.value() / (q0 - rho_hat.value());
  rep.notes.push_back("region bound N = " + big_n.get_str());
  Witness best = *w0;
  Rational best_q = q0;
  std::int64_t checks = 0;
  for (std::int64_t r = 1; Rational(Integer(static_cast<long>(r))) < big_n; ++r) {
    const Rational s_bound = Rational(Integer(static_cast<long>(r + *gap))) * rho_hat.value();
    for (std::int64_t s = 1; Rational(Integer(static_cast<long>(s))) < s_bound; ++s) {
      if (++checks > 200000) throw CapabilityError("exact region exceeds the check budget");
      Rational q = frac(s, r);
      if (q <= best_q) continue;
      if (auto m = containment_witness(a.member(s), b.member(r))) {
        best = Witness{s, r, *m};
        best_q = q;
      }
    }
  }
  rep.value = best_q;
  rep.witnesses.push_back(best);
  rep.certified = std::all_of(rep.hypotheses.begin(), rep.hypotheses.end(),
                              [](const Hypothesis& h) { return firm(h.status); });
  rep.labels.push_back("= rho(a, b)");
  if (!rep.assertions_used.empty()) rep.labels.push_back("certified-given-assertions");
  return rep;
}

VeroneseScalingReport veronese_scaling_check(const GradedFamily& a, const FamilyPtr& b, std::int64_t k,
                                             std::int64_t s_max, std::int64_t r_max, const SearchOptions& options,
                                             const Assertions& assertions) {
  check_positive(k, "k");
  VeroneseScalingReport out;
  if (assertions.b_veronese && *assertions.b_veronese == k) {
    out.validation.property = "standard_veronese(" + std::to_string(k) + ")";
    out.validation.holds = true;
    out.validation.certificate = CertificateKind::Asserted;
  } else {
    out.validation = is_standard_veronese(*b, k, static_cast<std::size_t>(options.horizon));
  }
  FamilyPtr bk = GradedFamily::powers(explicit_of(b->member(k)));
  out.rho_powers = rho_window(a, *bk, s_max, r_max).value;
  out.rho_family = rho_window(a, *b, s_max, checked_mul(k, r_max)).value;
  const bool inequality = out.rho_powers <= scale(out.rho_family, k);
  try {
    out.rees_powers = rho_hat_rees(a, *bk, options, assertions).value;
    out.rees_family = rho_hat_rees(a, *b, options, assertions).value;
    out.rees_equal = *out.rees_powers == scale(*out.rees_family, k);
  } catch (const CapabilityError& e) {
    out.validation.note += std::string("Rees comparison skipped: ") + e.what() + "; ";
    out.rees_powers.reset();
    out.rees_family.reset();
  }
  out.validation.note += "window rho(a, b_k^n) = " + out.rho_powers.to_string() + ", k * window rho(a, b) = " +
                         scale(out.rho_family, k).to_string();
  out.validation.holds = out.validation.holds && inequality && out.rees_equal.value_or(true);
  if (!inequality) out.validation.certificate = CertificateKind::Failed;
  return out;
}

LinearlyFinerReport linearly_finer_check(const GradedFamily& a, const GradedFamily& b, std::size_t window,
                                         std::int64_t s_max, std::int64_t r_max, Search mode) {
  LinearlyFinerReport out;
  out.window = window;
  out.rho_star = rho_window(a, b, s_max, r_max, mode).value;
  if (out.rho_star.tag() == ExtendedRational::Tag::PosInfinity) {
    out.note = "rho is infinite";
    return out;
  }
  LinearFunction f{1, 0};
  if (out.rho_star.is_finite()) {
    const Rational& q = out.rho_star.value();
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    f = LinearFunction{std::max<std::int64_t>(1, c.get_si()), 1};
  }
  out.f = f;
  for (std::int64_t i = 1; i <= static_cast<std::int64_t>(window); ++i) {
    if (auto m = containment_witness(a.member(f(i)), b.member(i))) {
      out.counterexample = Counterexample{{f(i), i}, *m};
      out.note = "a_f(i) not inside b_i";
      return out;
    }
  }
  out.finer = true;
  out.note = "a_f(i) inside b_i for i <= " + std::to_string(window);
  return out;
}

std::int64_t containment_order(const MonomialIdeal& ideal, const MonomialIdeal& prime, std::int64_t cap) {
  if (ideal.vars() != prime.vars()) throw DimensionError("ideals have different numbers of variables");
  if (ideal.is_zero()) throw DomainError("containment order of the zero ideal is unbounded");
  std::int64_t l = 0;
  MonomialIdeal p = prime;
  while (l < cap && is_subset(ideal, p)) {
    ++l;
    p = multiply(p, prime);
  }
  return l;
}

}  // namespace resurgence
