#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bulksurf/harness/scenario.hpp"

namespace bulksurf {

enum class PropertyVerdict { Pass, Fail, Heuristic };

inline std::string_view to_string(PropertyVerdict v) {
  switch (v) {
    case PropertyVerdict::Pass: return "pass";
    case PropertyVerdict::Fail: return "fail";
    case PropertyVerdict::Heuristic: return "heuristic";
  }
  return "?";
}

struct PropertyReport {
  std::string id;
  PropertyVerdict verdict = PropertyVerdict::Fail;
  double measured = 0.0;
  double tol = 0.0;
  double runtime = 0.0;  // seconds
  std::string fingerprint;
  std::string note;      // secondary measurements, human readable
};

inline constexpr double kPositivityTol = 1e-12;
inline constexpr double kMassDriftTol = 1e-8;
inline constexpr double kCapTol = 1e-8;
inline constexpr double kComparisonTol = 1e-8;
inline constexpr double kBlowupWindow = 0.05;
inline constexpr double kBlowupProfileTol = 0.01;
inline constexpr double kConstantVarianceTol = 1e-8;
inline constexpr double kMinConvergenceOrder = 1.8;
inline constexpr double kEnvelopeSlack = 1.05;

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline PropertyVerdict at_most(double measured, double tol) {
  return measured <= tol ? PropertyVerdict::Pass : PropertyVerdict::Fail;
}

inline double variance(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const double mean = m.mean();
  return (m.array() - mean).square().mean();
}

inline std::string reason_note(const RunResult& r) {
  return "termination=" + std::string(to_string(r.reason));
}

}  // namespace detail

/// Minimum concentration over every accepted step stays above -1e-12.
inline PropertyReport check_positivity(const Scenario& s) {
  if (s.initial.min_value() < 0.0)
    throw precondition_error("check_positivity: initial data of '" + s.id + "' is negative");
  detail::Stopwatch sw;
  const auto r = run(s.problem(), s.initial, s.t_end, s.stepper);
  PropertyReport rep{s.id, {}, 0.0 - r.min_value, kPositivityTol, 0.0, fingerprint(s),
                     detail::reason_note(r)};
  rep.verdict = detail::at_most(rep.measured, rep.tol);
  if (r.reason == Termination::DtUnderflow) rep.verdict = PropertyVerdict::Fail;
  rep.runtime = sw.seconds();
  return rep;
}

/// Without reactions the per-species amount in bulk plus surface is constant.
inline PropertyReport check_mass_balance(const Scenario& s) {
  if (!s.bulk.empty() || !s.surface.empty())
    throw usage_error("check_mass_balance: scenario '" + s.id + "' has reactions");
  detail::Stopwatch sw;
  const auto pb = s.problem();
  const std::size_t n = s.system.size();
  std::vector<double> m0(n);
  for (std::size_t i = 0; i < n; ++i) m0[i] = total_mass(s.grid, s.initial, i);
  double drift = 0.0;
  const auto r = run(pb, s.initial, s.t_end, s.stepper, [&](const StepRecord& rec) {
    for (std::size_t i = 0; i < n; ++i)
      if (m0[i] > 0.0)
        drift = std::max(drift, std::abs(total_mass(s.grid, rec.after, i) - m0[i]) / m0[i]);
  });
  PropertyReport rep{s.id, {}, drift, kMassDriftTol, 0.0, fingerprint(s), detail::reason_note(r)};
  rep.verdict = detail::at_most(drift, rep.tol);
  if (r.reason != Termination::ReachedT) rep.verdict = PropertyVerdict::Fail;
  rep.runtime = sw.seconds();
  return rep;
}

/// The blow-up example: constants stay constant, c(0.5) matches 1/(1-t), and
/// the extrapolated blow-up time is within 5% of 1.
inline PropertyReport check_henry_blowup(const Scenario& s = henry_blowup_scenario()) {
  detail::Stopwatch sw;
  double var = std::max(detail::variance(s.initial.c), detail::variance(s.initial.c_surf));
  const auto r = run(s.problem(), s.initial, s.t_end, s.stepper, [&](const StepRecord& rec) {
    var = std::max({var, detail::variance(rec.after.c), detail::variance(rec.after.c_surf)});
  });

  double profile_err = std::numeric_limits<double>::infinity();
  for (const auto& smp : r.samples)
    if (std::abs(smp.t - 0.5) < 1e-9) {
      const double exact = 1.0 / (1.0 - smp.t);
      profile_err = std::max(std::abs(smp.species[0].linf_bulk - exact),
                             std::abs(smp.species[0].linf_surf - exact)) /
                    exact;
    }
  const bool blew = r.reason == Termination::Blowup && r.blowup && r.blowup->t_est;
  const double t_est = blew ? *r.blowup->t_est : std::numeric_limits<double>::quiet_NaN();
  const double window_err = blew ? std::abs(t_est - 1.0) : std::numeric_limits<double>::infinity();

  std::ostringstream note;
  note << detail::reason_note(r) << " t_est=" << format_g17(t_est)
       << " variance=" << format_g17(var) << " rel_err_t0.5=" << format_g17(profile_err);
  PropertyReport rep{s.id, {}, window_err, kBlowupWindow, 0.0, fingerprint(s), note.str()};
  const bool ok = window_err <= kBlowupWindow && var <= kConstantVarianceTol &&
                  profile_err <= kBlowupProfileTol;
  rep.verdict = ok ? PropertyVerdict::Pass : PropertyVerdict::Fail;
  rep.runtime = sw.seconds();
  return rep;
}

/// Single-species Langmuir: occupancy never exceeds max(theta(0), 1).
inline PropertyReport check_langmuir_cap(const Scenario& s) {
  if (s.system.size() != 1) throw usage_error("check_langmuir_cap: needs exactly one species");
  if (!s.surface.empty()) throw usage_error("check_langmuir_cap: surface reactions present");
  if (s.model.variant() != SorptionVariant::Langmuir)
    throw usage_error("check_langmuir_cap: needs the Langmuir model");
  detail::Stopwatch sw;
  const double scale = s.model.params().sigma[0] / s.model.params().c_s_sigma;
  const double theta0 = s.initial.c_surf.size() ? scale * s.initial.c_surf.maxCoeff() : 0.0;
  double theta_max = theta0;
  const auto r = run(s.problem(), s.initial, s.t_end, s.stepper, [&](const StepRecord& rec) {
    if (rec.after.c_surf.size())
      theta_max = std::max(theta_max, scale * rec.after.c_surf.maxCoeff());
  });
  const double measured = theta_max - std::max(theta0, 1.0);
  std::ostringstream note;
  note << detail::reason_note(r) << " theta0=" << format_g17(theta0)
       << " theta_max=" << format_g17(theta_max);
  PropertyReport rep{s.id, {}, measured, kCapTol, 0.0, fingerprint(s), note.str()};
  rep.verdict = detail::at_most(measured, kCapTol);
  if (r.reason != Termination::ReachedT) rep.verdict = PropertyVerdict::Fail;
  rep.runtime = sw.seconds();
  return rep;
}

struct ComparisonGap {
  double max_excess = -std::numeric_limits<double>::infinity();  // max of c - z
  double max_abs = 0.0;                                             // max of |c - z|
  std::size_t steps = 0;
};

/// Replays recorded steps for the linear auxiliary problems
///   bulk:    z_t = div(d grad z) - v.grad z + r(c),   inflow k_de (1 + c^S)
///   surface: z_t = div(d^S grad z)  + r^S(c^S) + k_ad c|_S
/// with frozen data taken from the recorded solution, on the same operators
/// and step sizes. The reaction increments are the recorded ones.
inline ComparisonGap comparison_gap(const Problem& pb, const State& initial,
                                    const std::vector<StepRecord>& steps,
                                    const StepperConfig& cfg) {
  const auto& g = pb.grid();
  const auto& faces = g.faces();
  const auto& model = pb.sorption();
  const std::size_t n = pb.species();
  const double vol = g.cell_volume();
  const Eigen::VectorXd vols = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.cells()), vol);
  Eigen::VectorXd areas(static_cast<Eigen::Index>(faces.size()));
  for (std::size_t f = 0; f < faces.size(); ++f) areas(static_cast<Eigen::Index>(f)) = faces[f].area;

  ComparisonGap gap;
  auto compare = [&](const State& c, const State& z) {
    const Eigen::MatrixXd db = c.c - z.c;
    const Eigen::MatrixXd ds = c.c_surf - z.c_surf;
    gap.max_excess = std::max(gap.max_excess, db.maxCoeff());
    gap.max_abs = std::max(gap.max_abs, db.cwiseAbs().maxCoeff());
    if (ds.size()) {
      gap.max_excess = std::max(gap.max_excess, ds.maxCoeff());
      gap.max_abs = std::max(gap.max_abs, ds.cwiseAbs().maxCoeff());
    }
  };

  State z = initial;
  compare(initial, z);
  for (const auto& rec : steps) {
    const double dt = rec.dt;
    detail::advect(pb, dt, z.c);
    z.c += rec.reaction_bulk;
    z.c_surf += rec.reaction_surface;
    const auto& mid = rec.after_sorption;
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto ff = static_cast<Eigen::Index>(f);
        const auto kk = static_cast<Eigen::Index>(faces[f].cell);
        z.c(ii, kk) += dt * faces[f].area / vol * model.k_de(i) * (1.0 + mid.c_surf(ii, ff));
        z.c_surf(ii, ff) += dt * model.k_ad(i) * mid.c(ii, kk);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      if (!detail::diffuse(pb.bulk_diffusion(i), vols, dt, cfg, z.c, row) ||
          !detail::diffuse(pb.surface_diffusion(i), areas, dt, cfg, z.c_surf, row))
        throw std::runtime_error("comparison replay: linear solve did not converge");
    }
    z.t = rec.after.t;
    compare(rec.after, z);
    ++gap.steps;
  }
  return gap;
}

/// Ordering c <= z against the frozen-data auxiliary problems for a finished
/// run. The run must have been made with record_steps.
inline PropertyReport check_comparison(const Scenario& s, const RunResult& r) {
  if (r.accepted > 0 && r.steps.size() != r.accepted)
    throw usage_error("check_comparison: run of '" + s.id + "' has no recorded steps");
  detail::Stopwatch sw;
  const auto gap = comparison_gap(s.problem(), s.initial, r.steps, s.stepper);
  std::ostringstream note;
  note << detail::reason_note(r) << " steps=" << gap.steps
       << " max_abs_gap=" << format_g17(gap.max_abs);
  PropertyReport rep{s.id, {}, gap.max_excess, kComparisonTol, 0.0, fingerprint(s), note.str()};
  rep.verdict = detail::at_most(gap.max_excess, kComparisonTol);
  rep.runtime = sw.seconds();
  return rep;
}

inline PropertyReport check_comparison(const Scenario& s) {
  detail::Stopwatch sw;
  StepperConfig cfg = s.stepper;
  cfg.record_steps = true;
  const auto r = run(s.problem(), s.initial, s.t_end, cfg);
  auto rep = check_comparison(s, r);
  if (r.reason != Termination::ReachedT) rep.verdict = PropertyVerdict::Fail;
  rep.runtime = sw.seconds();
  return rep;
}

struct HeatError {
  std::size_t cells = 0;
  double l2 = 0.0;
};

/// Discrete L2 error against 1 + a exp(-d pi^2 t) cos(pi x) at the final time.
inline HeatError heat_error(const Scenario& s, double amplitude = 1.0) {
  const auto r = run(s.problem(), s.initial, s.t_end, s.stepper);
  if (r.reason != Termination::ReachedT) throw std::runtime_error("heat run did not reach T");
  const double d = s.system.d_bulk(0);
  const double t = r.final_state.t;
  const double decay = std::exp(-d * std::numbers::pi * std::numbers::pi * t);
  double e2 = 0.0;
  for (std::size_t k = 0; k < s.grid.cells(); ++k) {
    const double x = s.grid.cell_center(k)[0];
    const double exact = 1.0 + amplitude * decay * std::cos(std::numbers::pi * x);
    const double diff = r.final_state.c(0, static_cast<Eigen::Index>(k)) - exact;
    e2 += s.grid.cell_volume() * diff * diff;
  }
  return {s.grid.cells(), std::sqrt(e2)};
}

/// Observed spatial order log2(e_h / e_{h/2}) on 16/32/64 cells, dt ~ h^2.
inline PropertyReport check_heat_convergence() {
  detail::Stopwatch sw;
  std::vector<HeatError> errs;
  for (std::size_t n : {16, 32, 64}) errs.push_back(heat_error(heat_scenario(n)));
  const double o1 = std::log2(errs[0].l2 / errs[1].l2);
  const double o2 = std::log2(errs[1].l2 / errs[2].l2);
  std::ostringstream note;
  note << "e16=" << format_g17(errs[0].l2) << " e32=" << format_g17(errs[1].l2)
       << " e64=" << format_g17(errs[2].l2) << " order_16_32=" << format_g17(o1);
  PropertyReport rep{"heat_convergence", {}, o2, kMinConvergenceOrder, 0.0,
                     fingerprint(heat_scenario(64)), note.str()};
  rep.verdict = o2 >= kMinConvergenceOrder ? PropertyVerdict::Pass : PropertyVerdict::Fail;
  rep.runtime = sw.seconds();
  return rep;
}

struct EnvelopeSeries {
  std::string label;                      // e.g. "A/bulk/q=2"
  std::vector<double> tau;
  std::vector<double> norm;               // space-time L_q norm on (0, tau)
  double log_m = 0.0, omega = 0.0;        // fitted envelope M e^{omega tau} tau^{1/q}
  double worst_ratio = 0.0;               // max norm / envelope
  bool nondecreasing = true;
};

/// Least-squares fit of log(N(tau) / tau^{1/q}) = log M + omega tau, i.e. of
/// the time-averaged norm, and the worst sample-to-envelope ratio.
inline void fit_envelope(EnvelopeSeries& s, double q) {
  std::vector<double> x, y;
  for (std::size_t k = 0; k < s.tau.size(); ++k) {
    if (k > 0 && s.norm[k] < s.norm[k - 1]) s.nondecreasing = false;
    if (s.norm[k] > 0.0 && s.tau[k] > 0.0) {
      x.push_back(s.tau[k]);
      y.push_back(std::log(s.norm[k]) - std::log(s.tau[k]) / q);
    }
  }
  if (x.empty()) return;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  s.omega = sxx > 0.0 ? sxy / sxx : 0.0;
  s.log_m = my - s.omega * mx;
  for (std::size_t k = 0; k < x.size(); ++k)
    s.worst_ratio = std::max(s.worst_ratio, std::exp(y[k] - (s.log_m + s.omega * x[k])));
}

/// Space-time norms of every species in bulk and on the surface, sampled at
/// the output cadence, each checked against its fitted exponential envelope.
inline std::vector<EnvelopeSeries> envelope_series(const Scenario& s,
                                                   const std::vector<double>& qs) {
  const std::size_t n = s.system.size();
  const auto& faces = s.grid.faces();
  const double vol = s.grid.cell_volume();
  // integrals[(i, phase, q)] accumulated with the right-endpoint rule
  std::vector<double> acc(n * 2 * qs.size(), 0.0);
  std::map<double, std::vector<double>> at_time;
  const auto r = run(s.problem(), s.initial, s.t_end, s.stepper, [&](const StepRecord& rec) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      for (std::size_t iq = 0; iq < qs.size(); ++iq) {
        const double q = qs[iq];
        double bulk = 0.0, surf = 0.0;
        for (Eigen::Index k = 0; k < rec.after.c.cols(); ++k)
          bulk += vol * std::pow(std::abs(rec.after.c(ii, k)), q);
        for (std::size_t f = 0; f < faces.size(); ++f)
          surf += faces[f].area *
                  std::pow(std::abs(rec.after.c_surf(ii, static_cast<Eigen::Index>(f))), q);
        acc[(i * 2 + 0) * qs.size() + iq] += rec.dt * bulk;
        acc[(i * 2 + 1) * qs.size() + iq] += rec.dt * surf;
      }
    }
    at_time[rec.after.t] = acc;
  });

  std::vector<EnvelopeSeries> out;
  for (std::size_t i = 0; i < n; ++i)
    for (int phase = 0; phase < 2; ++phase)
      for (std::size_t iq = 0; iq < qs.size(); ++iq) {
        EnvelopeSeries es;
        es.label = s.system.names()[i] + (phase == 0 ? "/bulk" : "/surface") +
                   "/q=" + format_g17(qs[iq]);
        const std::size_t slot = (i * 2 + static_cast<std::size_t>(phase)) * qs.size() + iq;
        for (const auto& smp : r.samples) {
          const auto it = at_time.find(smp.t);
          if (smp.t <= s.initial.t || it == at_time.end()) continue;
          es.tau.push_back(smp.t - s.initial.t);
          es.norm.push_back(std::pow(it->second[slot], 1.0 / qs[iq]));
        }
        fit_envelope(es, qs[iq]);
        out.push_back(std::move(es));
      }
  return out;
}

/// Norm growth stays under a fitted exponential envelope. Scenarios that
/// knowingly violate the growth hypotheses are labelled heuristic.
inline PropertyReport check_norm_envelope(const Scenario& s, const std::vector<double>& qs = {2.0, 4.0}) {
  if (!s.tri_bulk) throw precondition_error("check_norm_envelope: no triangular structure for '" + s.id + "'");
  const double radius = 10.0;
  if (check_triangular(s.bulk, *s.tri_bulk, radius).verdict != Verdict::Pass ||
      (s.tri_surface && check_triangular(s.surface, *s.tri_surface, radius).verdict != Verdict::Pass))
    throw precondition_error("check_norm_envelope: '" + s.id + "' fails the triangular structure check");
  detail::Stopwatch sw;
  const auto series = envelope_series(s, qs);
  double worst = 0.0;
  bool monotone = true;
  std::string worst_label;
  for (const auto& es : series) {
    if (es.worst_ratio > worst) {
      worst = es.worst_ratio;
      worst_label = es.label;
    }
    monotone = monotone && es.nondecreasing;
  }
  std::ostringstream note;
  note << "nondecreasing=" << (monotone ? "yes" : "no") << " worst_series=" << worst_label;
  PropertyReport rep{s.id, {}, worst, kEnvelopeSlack, 0.0, fingerprint(s), note.str()};
  if (!monotone)
    rep.verdict = PropertyVerdict::Fail;
  else if (s.expects_blowup)
    rep.verdict = PropertyVerdict::Heuristic;
  else
    rep.verdict = detail::at_most(worst, kEnvelopeSlack);
  rep.runtime = sw.seconds();
  return rep;
}

struct PropertyCase {
  std::string id;
  std::function<PropertyReport()> check;
};

/// The full verification suite in a fixed order.
inline std::vector<PropertyCase> property_suite() {
  std::vector<PropertyCase> out;
  out.push_back({"henry_blowup", [] { return check_henry_blowup(); }});
  for (auto& s : positivity_scenarios())
    out.push_back({s.id, [s] { return check_positivity(s); }});
  for (auto& s : mass_balance_scenarios())
    out.push_back({s.id, [s] { return check_mass_balance(s); }});
  for (auto& s : langmuir_cap_scenarios())
    out.push_back({s.id, [s] { return check_langmuir_cap(s); }});
  for (auto& s : comparison_scenarios())
    out.push_back({s.id, [s] { return check_comparison(s); }});
  out.push_back({"heat_convergence", [] { return check_heat_convergence(); }});
  for (auto& s : norm_envelope_scenarios())
    out.push_back({s.id, [s] { return check_norm_envelope(s); }});
  return out;
}

}  // namespace bulksurf
