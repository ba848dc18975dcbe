#pragma once

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bulksurf/errors.hpp"
#include "bulksurf/exponents/rational.hpp"

namespace bulksurf {

// Exact admissibility calculator for the integrability exponent p, the space
// dimension d and the sorption polynomial degrees K_omega (bulk trace) and
// K_sigma (surface). All comparisons are done on rationals so boundary cases
// such as p = (d+2)/2 are decided exactly.

enum class Relation { GreaterEq, Greater, LessEq, Less };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::GreaterEq: return ">=";
    case Relation::Greater: return ">";
    case Relation::LessEq: return "<=";
    case Relation::Less: return "<";
  }
  return "?";
}

struct Inequality {
  std::string name;
  Rational lhs;
  Relation rel = Relation::GreaterEq;
  Rational rhs;
  bool holds = false;
};

inline Inequality compare(std::string name, Rational lhs, Relation rel, Rational rhs) {
  bool ok = false;
  switch (rel) {
    case Relation::GreaterEq: ok = lhs >= rhs; break;
    case Relation::Greater: ok = lhs > rhs; break;
    case Relation::LessEq: ok = lhs <= rhs; break;
    case Relation::Less: ok = lhs < rhs; break;
  }
  return {std::move(name), std::move(lhs), rel, std::move(rhs), ok};
}

// Conjunction of inequalities.
struct Clause {
  std::string name;
  std::vector<Inequality> terms;
  bool holds = true;
};

inline Clause make_clause(std::string name, std::vector<Inequality> terms) {
  Clause c{std::move(name), std::move(terms), true};
  for (const auto& t : c.terms) c.holds = c.holds && t.holds;
  return c;
}

/// admissible = (all required clauses hold) and (alternatives empty or at
/// least one alternative holds).
struct AdmissibilityReport {
  std::string predicate;
  std::vector<Clause> required;
  std::vector<Clause> alternatives;
  bool admissible = false;
};

inline AdmissibilityReport make_report(std::string predicate, std::vector<Clause> required,
                                       std::vector<Clause> alternatives) {
  AdmissibilityReport r{std::move(predicate), std::move(required), std::move(alternatives), true};
  for (const auto& c : r.required) r.admissible = r.admissible && c.holds;
  if (!r.alternatives.empty()) {
    bool any = false;
    for (const auto& c : r.alternatives) any = any || c.holds;
    r.admissible = r.admissible && any;
  }
  return r;
}

struct ExponentQuery {
  int d = 3;
  Rational p = 2;
  int k_omega = 1;
  int k_sigma = 1;
  std::optional<Rational> gamma_omega;
  std::optional<Rational> gamma_sigma;
  std::optional<Rational> mu_omega;
  std::optional<Rational> mu_sigma;

  // p = 1 is accepted so the boundary of the sorption condition can be
  // evaluated; every predicate treats the inequalities literally.
  void validate() const {
    if (d < 1) throw domain_error("exponent query: d must be >= 1");
    if (p < 1) throw domain_error("exponent query: p must be >= 1");
    if (k_omega < 1 || k_sigma < 1) throw domain_error("exponent query: K must be >= 1");
    if (gamma_omega && *gamma_omega < 1) throw domain_error("exponent query: gamma_omega < 1");
    if (gamma_sigma && *gamma_sigma < 1) throw domain_error("exponent query: gamma_sigma < 1");
    if (mu_omega && *mu_omega < 0) throw domain_error("exponent query: mu_omega < 0");
    if (mu_sigma && *mu_sigma < 0) throw domain_error("exponent query: mu_sigma < 0");
  }
};

/// Parabolic Sobolev index 2s - (d+2)/p.
inline Rational anisotropic_index(const Rational& s, const Rational& p, int d) {
  if (p <= 1) throw domain_error("anisotropic_index: p must be > 1");
  if (d < 1) throw domain_error("anisotropic_index: d must be >= 1");
  return 2 * s - Rational(d + 2) / p;
}

struct SobolevFactor {
  Rational s;
  Rational p;
};

/// Regularity, integrability and index constraints for continuity of the
/// pointwise product W^{s_1}_{p_1} x ... x W^{s_m}_{p_m} -> W^s_p.
inline AdmissibilityReport multiplication_admissible(const Rational& s, const Rational& p,
                                                     const std::vector<SobolevFactor>& factors,
                                                     int d) {
  if (factors.empty()) throw usage_error("multiplication_admissible: no factors");
  const Rational ind = anisotropic_index(s, p, d);

  Rational min_s = factors.front().s;
  Rational inv_sum = 0;
  std::vector<Rational> ind_j;
  for (const auto& f : factors) {
    ind_j.push_back(anisotropic_index(f.s, f.p, d));
    min_s = std::min(min_s, f.s);
    inv_sum += 1 / f.p;
  }
  const bool all_nonneg = std::all_of(ind_j.begin(), ind_j.end(), [](auto& x) { return x >= 0; });
  const bool any_zero = std::any_of(ind_j.begin(), ind_j.end(), [](auto& x) { return x == 0; });
  Rational bound = 0;
  if (all_nonneg) {
    bound = *std::min_element(ind_j.begin(), ind_j.end());
  } else {
    for (const auto& x : ind_j)
      if (x < 0) bound += x;
  }
  const Relation index_rel = any_zero ? Relation::Less : Relation::LessEq;

  return make_report(
      "multiplication",
      {make_clause("regularity", {compare("s vs min s_j", s, Relation::LessEq, min_s)}),
       make_clause("integrability", {compare("1/p vs sum 1/p_j", 1 / p, Relation::GreaterEq,
                                              inv_sum)}),
       make_clause("index", {compare(all_nonneg ? "ind vs min ind_j" : "ind vs sum negative ind_j",
                                     ind, index_rel, bound)})},
      {});
}

namespace detail {
inline Rational trace_threshold(const ExponentQuery& q) {
  const Rational d = q.d, ko = q.k_omega, ks = q.k_sigma;
  return d - (d + 1 - ko) / (ko + ks);
}
// (K-1)^+ / (2K-1)^+, zero whenever the numerator vanishes.
inline Rational degenerate_ratio(int k) {
  const Rational num = positive_part(Rational(k - 1));
  if (num == 0) return 0;
  return num / positive_part(Rational(2 * k - 1));
}
}  // namespace detail

/// Sufficient conditions for the sorption term to act as a continuous
/// Nemytskii operator on the surface trace spaces.
inline AdmissibilityReport sorption_trace_admissible(const ExponentQuery& q) {
  q.validate();
  const Rational d = q.d, ko = q.k_omega, ks = q.k_sigma, p = q.p;
  const Rational thr = detail::trace_threshold(q);
  return make_report(
      "sorption_trace", {},
      {make_clause("bullet1", {compare("p > d", p, Relation::Greater, d)}),
       make_clause("bullet2",
                   {compare("p >= d - (d+1-Ko)/(Ko+Ks)", p, Relation::GreaterEq, thr),
                    compare("p >= (d+2)/2", p, Relation::GreaterEq, (d + 2) / 2),
                    compare("p >= (Ko-1)/(2Ko-1) (d+2)", p, Relation::GreaterEq,
                            (ko - 1) / (2 * ko - 1) * (d + 2))}),
       make_clause("bullet3",
                   {compare("p >= d - (d+1-Ko)/(Ko+Ks)", p, Relation::GreaterEq, thr),
                    compare("p >= ((Ko+Ks-1)(d+2) - Ks)/(2(Ko+Ks)-1)", p, Relation::GreaterEq,
                            ((ko + ks - 1) * (d + 2) - ks) / (2 * (ko + ks) - 1))})});
}

/// Integrability conditions the sorption model imposes through its
/// polynomial growth degrees.
inline AdmissibilityReport assumption_sorption_admissible(const ExponentQuery& q) {
  q.validate();
  const Rational d = q.d, ko = q.k_omega, ks = q.k_sigma, p = q.p;
  const Rational growth = ko * positive_part(d + 1 - p) + ks * positive_part(d - p);
  const Rational inner = std::max(Rational((d + 1) / 2), detail::degenerate_ratio(q.k_omega) * (d + 2));
  const Rational alt = ((ko + ks - 1) * (d + 1) - 1) / (2 * (ko + ks) - 1);
  return make_report(
      "assumption_sorption",
      {make_clause("degree", {compare("d+1 >= Ko (d+1-p)^+ + Ks (d-p)^+", d + 1,
                                      Relation::GreaterEq, growth)}),
       make_clause("integrability",
                   {compare("p >= min{max{(d+1)/2, (Ko-1)^+/(2Ko-1)^+ (d+2)}, "
                            "((Ko+Ks-1)(d+1)-1)/(2(Ko+Ks)-1)}",
                            p, Relation::GreaterEq, std::min(inner, alt))})},
      {});
}

/// Exponent conditions for local-in-time well-posedness of strong solutions.
inline AdmissibilityReport lwp_admissible(const ExponentQuery& q) {
  q.validate();
  const Rational d = q.d, ko = q.k_omega, ks = q.k_sigma, p = q.p;
  const Rational thr = detail::trace_threshold(q);
  return make_report(
      "local_wellposedness",
      {make_clause("gate", {compare("p >= (d+2)/2", p, Relation::GreaterEq, (d + 2) / 2)})},
      {make_clause("bullet1", {compare("p > d", p, Relation::Greater, d)}),
       make_clause("bullet2",
                   {compare("p >= d - (d+1-Ko)/(Ko+Ks)", p, Relation::GreaterEq, thr),
                    compare("p >= (d+2)/2", p, Relation::GreaterEq, (d + 2) / 2),
                    compare("p >= (Ko-1)/(2Ko-1) (d+2)", p, Relation::GreaterEq,
                            (ko - 1) / (2 * ko - 1) * (d + 2))}),
       make_clause("bullet3",
                   {compare("p >= d - (d+1-Ko)/(Ko+Ks)", p, Relation::GreaterEq, thr),
                    compare("p >= (d+2)/2 - (d+3)/(4(Ko+Ks)-2)", p, Relation::GreaterEq,
                            (d + 2) / 2 - (d + 3) / (4 * (ko + ks) - 2))})});
}

/// Growth-exponent limits for the reaction rates (only the supplied gammas
/// are checked): gamma <= (1 - 2p/(d+2))^-1 in the bulk when p < (d+2)/2 and
/// gamma <= (1 - 2p/(d+1))^-1 on the surface when p < (d+1)/2.
inline AdmissibilityReport reaction_growth_admissible(const ExponentQuery& q) {
  q.validate();
  const Rational d = q.d, p = q.p;
  std::vector<Clause> req;
  auto limit = [&](const char* name, const Rational& gamma, const Rational& dd) {
    if (p >= dd / 2)
      return make_clause(name, {compare("p >= critical", p, Relation::GreaterEq, dd / 2)});
    return make_clause(name, {compare("gamma <= (1 - 2p/dd)^-1", gamma, Relation::LessEq,
                                      1 / (1 - 2 * p / dd))});
  };
  if (q.gamma_omega) req.push_back(limit("bulk_growth", *q.gamma_omega, d + 2));
  if (q.gamma_sigma) req.push_back(limit("surface_growth", *q.gamma_sigma, d + 1));
  return make_report("reaction_growth", std::move(req), {});
}

/// Range of p for the L_p-L_q bootstrap under the triangular structure with
/// exponents mu: p > max{1, (mu_o-1)(d+2)/(2 mu_o), (mu_s-1)(d+1)/(2 mu_s)}.
inline AdmissibilityReport lpq_estimate_admissible(const ExponentQuery& q) {
  q.validate();
  const Rational d = q.d;
  Rational lower = 1;
  auto term = [](const std::optional<Rational>& mu, const Rational& dd) -> Rational {
    if (!mu || *mu == 0) return 0;
    return (*mu - 1) * dd / (2 * *mu);
  };
  lower = std::max({lower, term(q.mu_omega, d + 2), term(q.mu_sigma, d + 1)});
  return make_report("lpq_estimate",
                     {make_clause("range", {compare("p > max{1, mu terms}", q.p, Relation::Greater,
                                                     lower)})},
                     {});
}

/// Power of tau in the embedding constant for functions with zero initial
/// trace: 1/q - 1/p + 2/(d+2). Requires 2 - (d+2)/p >= -(d+2)/q.
inline Rational embedding_exponent(const Rational& p, const Rational& q, int d) {
  if (p <= 1 || q <= 1) throw domain_error("embedding_exponent: p and q must be > 1");
  if (d < 1) throw domain_error("embedding_exponent: d must be >= 1");
  const Rational dd = d + 2;
  if (2 - dd / p < -dd / q)
    throw domain_error("embedding_exponent: requires 2 - (d+2)/p >= -(d+2)/q, got " +
                       to_string(2 - dd / p) + " < " + to_string(-dd / q));
  return 1 / q - 1 / p + 2 / dd;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {
inline std::string approx(const Rational& x) {
  std::ostringstream os;
  os << std::setprecision(10) << to_double(x);
  return os.str();
}
}  // namespace detail

inline std::string render_text(const AdmissibilityReport& r) {
  std::ostringstream os;
  os << r.predicate << ": " << (r.admissible ? "ADMISSIBLE" : "NOT ADMISSIBLE") << '\n';
  auto block = [&](const char* heading, const std::vector<Clause>& clauses) {
    if (clauses.empty()) return;
    os << "  " << heading << '\n';
    for (const auto& c : clauses) {
      os << "    " << std::left << std::setw(14) << c.name << (c.holds ? "holds" : "fails") << '\n';
      for (const auto& t : c.terms)
        os << "      " << std::left << std::setw(64) << t.name << std::right << std::setw(12)
           << detail::approx(t.lhs) << ' ' << std::setw(2) << to_string(t.rel) << ' '
           << std::left << std::setw(12) << detail::approx(t.rhs) << (t.holds ? " ok" : " FAIL")
           << '\n';
    }
  };
  block("all of:", r.required);
  block("any of:", r.alternatives);
  return os.str();
}

inline std::string render_kv(const AdmissibilityReport& r) {
  std::ostringstream os;
  os << r.predicate << ".admissible=" << (r.admissible ? 1 : 0) << '\n';
  auto block = [&](const std::vector<Clause>& clauses) {
    for (const auto& c : clauses) {
      os << r.predicate << '.' << c.name << ".holds=" << (c.holds ? 1 : 0) << '\n';
      for (std::size_t k = 0; k < c.terms.size(); ++k) {
        const auto& t = c.terms[k];
        const std::string key = r.predicate + '.' + c.name + '.' + std::to_string(k);
        os << key << ".lhs=" << to_string(t.lhs) << '\n'
           << key << ".rel=" << to_string(t.rel) << '\n'
           << key << ".rhs=" << to_string(t.rhs) << '\n'
           << key << ".holds=" << (t.holds ? 1 : 0) << '\n';
      }
    }
  };
  block(r.required);
  block(r.alternatives);
  return os.str();
}

}  // namespace bulksurf
