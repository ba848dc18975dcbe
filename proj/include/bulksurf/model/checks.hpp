#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bulksurf/errors.hpp"
#include "bulksurf/model/reactions.hpp"
#include "bulksurf/model/sampling.hpp"
#include "bulksurf/model/sorption.hpp"

namespace bulksurf {

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct Witness {
  std::vector<double> c;       // bulk (trace) concentrations, or the rate argument
  std::vector<double> c_surf;  // empty for single-argument checks
};

/// Outcome of a sample-based structural check. A Fail always carries the
/// witness with the largest violation; the matching *_violation function
/// evaluated there reproduces worst_violation.
struct CheckReport {
  std::string property;
  Verdict verdict = Verdict::Inconclusive;
  double worst_violation = 0.0;
  std::string worst_rule;
  std::optional<Witness> witness;
  std::size_t samples = 0;
};

inline constexpr double kCheckTolerance = 1e-8;

using RateFunction = std::function<std::vector<double>(std::span<const double>)>;
using SorptionFunction =
    std::function<std::vector<double>(std::span<const double>, std::span<const double>)>;

struct PointViolation {
  double amount = 0.0;
  std::string rule;
};

namespace detail {
inline void keep_worst(PointViolation& worst, double amount, std::string_view rule) {
  if (amount > worst.amount) {
    worst.amount = amount;
    worst.rule = rule;
  }
}

inline double euclid(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline CheckReport finish(CheckReport rep, double tol) {
  rep.verdict = rep.worst_violation > tol ? Verdict::Fail : Verdict::Pass;
  if (rep.verdict == Verdict::Pass) rep.witness.reset();
  return rep;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Quasi-positivity: r_i(z) >= 0 whenever z_i = 0.

inline PointViolation quasi_positivity_violation(const RateFunction& f,
                                                 std::span<const double> z) {
  PointViolation v;
  const auto r = f(z);
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] == 0.0) detail::keep_worst(v, -r[i], "r_i(z) >= 0 on face z_i = 0");
  return v;
}

inline CheckReport check_quasi_positivity(const RateFunction& f, std::size_t n,
                                          const SamplingPlan& plan = {}, double radius = 10.0,
                                          double tol = kCheckTolerance) {
  CheckReport rep;
  rep.property = "quasi_positivity";
  const auto pts = sample_box(n, radius, plan);
  for (std::size_t face = 0; face < n; ++face) {
    for (auto z : pts) {
      z[face] = 0.0;
      const auto v = quasi_positivity_violation(f, z);
      ++rep.samples;
      if (!rep.witness || v.amount > rep.worst_violation) {
        rep.worst_violation = v.amount;
        rep.worst_rule = v.rule;
        rep.witness = Witness{z, {}};
      }
    }
  }
  return detail::finish(std::move(rep), tol);
}

inline CheckReport check_quasi_positivity(const ReactionNetwork& net,
                                          const SamplingPlan& plan = {}, double radius = 10.0) {
  return check_quasi_positivity(
      [&net](std::span<const double> c) {
        std::vector<double> r(c.size());
        net.rates(c, r);
        return r;
      },
      net.species(), plan, radius);
}

// ---------------------------------------------------------------------------
// Sorption structure: linear bounds, monotonicity and sign conditions.

struct SorptionBounds {
  std::vector<double> k_ad;
  std::vector<double> k_de;
};

inline PointViolation sorption_structure_violation(const SorptionFunction& s,
                                                   const SorptionBounds& k,
                                                   std::span<const double> c,
                                                   std::span<const double> cs, double radius) {
  const std::size_t n = c.size();
  PointViolation v;
  const auto base = s(c, cs);
  const double norm_c = detail::euclid(c);
  const double norm_cs = detail::euclid(cs);
  const double h = 1e-6 * std::max(1.0, radius);

  std::vector<double> a(c.begin(), c.end());
  std::vector<double> b(cs.begin(), cs.end());
  for (std::size_t i = 0; i < n; ++i) {
    detail::keep_worst(v, -k.k_de[i] * (1.0 + norm_cs) - base[i], "s_i >= -k_de (1 + |c_surf|)");
    detail::keep_worst(v, base[i] - k.k_ad[i] * (1.0 + norm_c), "s_i <= k_ad (1 + |c|)");

    // d s_i / d c_i >= 0
    {
      const double x = a[i];
      const double lo = x >= h ? x - h : x;
      a[i] = x + h;
      const double up = s(a, b)[i];
      a[i] = lo;
      const double dn = s(a, b)[i];
      a[i] = x;
      detail::keep_worst(v, -(up - dn) / (x + h - lo), "d s_i / d c_i >= 0");
    }
    // d s_i / d c_surf_i <= 0
    {
      const double x = b[i];
      const double lo = x >= h ? x - h : x;
      b[i] = x + h;
      const double up = s(a, b)[i];
      b[i] = lo;
      const double dn = s(a, b)[i];
      b[i] = x;
      detail::keep_worst(v, (up - dn) / (x + h - lo), "d s_i / d c_surf_i <= 0");
    }
    // sign conditions with the i-th component removed
    {
      const double x = a[i];
      a[i] = 0.0;
      detail::keep_worst(v, s(a, b)[i], "s_i(c with c_i = 0, c_surf) <= 0");
      a[i] = x;
    }
    {
      const double x = b[i];
      b[i] = 0.0;
      detail::keep_worst(v, -s(a, b)[i], "s_i(c, c_surf with c_surf_i = 0) >= 0");
      b[i] = x;
    }
  }
  return v;
}

inline CheckReport check_sorption_structure(const SorptionFunction& s, const SorptionBounds& k,
                                            double radius, const SamplingPlan& plan = {},
                                            double tol = kCheckTolerance) {
  if (!(radius > 0.0)) throw usage_error("check_sorption_structure: radius must be > 0");
  const std::size_t n = k.k_ad.size();
  if (k.k_de.size() != n) throw usage_error("check_sorption_structure: bounds length mismatch");
  CheckReport rep;
  rep.property = "sorption_structure";
  for (const auto& p : sample_box(2 * n, radius, plan)) {
    std::span<const double> c(p.data(), n), cs(p.data() + n, n);
    const auto v = sorption_structure_violation(s, k, c, cs, radius);
    ++rep.samples;
    if (!rep.witness || v.amount > rep.worst_violation) {
      rep.worst_violation = v.amount;
      rep.worst_rule = v.rule;
      rep.witness = Witness{{c.begin(), c.end()}, {cs.begin(), cs.end()}};
    }
  }
  return detail::finish(std::move(rep), tol);
}

inline SorptionFunction as_function(const SorptionModel& model) {
  return [model](std::span<const double> c, std::span<const double> cs) {
    return eval_sorption(model, c, cs);
  };
}

inline SorptionBounds bounds_of(const SorptionModel& model) {
  return {model.params().k_ad, model.params().k_de};
}

inline CheckReport check_sorption_structure(const SorptionModel& model, double radius,
                                            const SamplingPlan& plan = {}) {
  return check_sorption_structure(as_function(model), bounds_of(model), radius, plan);
}

// ---------------------------------------------------------------------------
// Triangular (intermediate sum) structure: Q r(y) <= C (1 + sum y)^mu e.

struct TriangularStructure {
  std::vector<std::vector<double>> Q;  // lower triangular, positive diagonal
  double c_tr = 1.0;
  double mu = 0.0;

  void validate() const {
    const std::size_t n = Q.size();
    if (n == 0) throw usage_error("triangular structure: empty Q");
    for (std::size_t i = 0; i < n; ++i) {
      if (Q[i].size() != n) throw usage_error("triangular structure: Q must be square");
      for (std::size_t j = 0; j < n; ++j) {
        if (j > i && Q[i][j] != 0.0)
          throw usage_error("triangular structure: Q must be lower triangular");
        if (!(Q[i][j] >= 0.0)) throw usage_error("triangular structure: Q entries must be >= 0");
      }
      if (!(Q[i][i] > 0.0)) throw usage_error("triangular structure: Q diagonal must be > 0");
    }
    if (!(c_tr > 0.0)) throw usage_error("triangular structure: C_tr must be > 0");
    if (!(mu >= 0.0)) throw usage_error("triangular structure: mu must be >= 0");
  }
};

inline PointViolation triangular_violation(const ReactionNetwork& net,
                                           const TriangularStructure& t,
                                           std::span<const double> y) {
  const std::size_t n = net.species();
  std::vector<double> r(n);
  net.rates(y, r);
  const double bound =
      t.c_tr * std::pow(1.0 + std::accumulate(y.begin(), y.end(), 0.0), t.mu);
  PointViolation v;
  for (std::size_t i = 0; i < n; ++i) {
    double qr = 0.0;
    for (std::size_t j = 0; j <= i; ++j) qr += t.Q[i][j] * r[j];
    detail::keep_worst(v, qr - bound, "(Q r)_i <= C_tr (1 + sum y)^mu");
  }
  return v;
}

inline CheckReport check_triangular(const ReactionNetwork& net, const TriangularStructure& t,
                                    double radius, const SamplingPlan& plan = {},
                                    double tol = kCheckTolerance) {
  t.validate();
  if (t.Q.size() != net.species())
    throw usage_error("check_triangular: Q dimension does not match the network");
  if (!(radius > 0.0)) throw usage_error("check_triangular: radius must be > 0");
  const std::size_t n = net.species();
  auto pts = sample_box(n, radius, plan);
  for (std::size_t k = 0; k < n; ++k)
    for (double frac : {0.125, 0.25, 0.5, 0.75}) {
      std::vector<double> p(n, 0.0);
      p[k] = frac * radius;
      pts.push_back(std::move(p));
    }
  CheckReport rep;
  rep.property = "triangular_structure";
  for (const auto& y : pts) {
    const auto v = triangular_violation(net, t, y);
    ++rep.samples;
    if (!rep.witness || v.amount > rep.worst_violation) {
      rep.worst_violation = v.amount;
      rep.worst_rule = v.rule;
      rep.witness = Witness{y, {}};
    }
  }
  return detail::finish(std::move(rep), tol);
}

}  // namespace bulksurf
