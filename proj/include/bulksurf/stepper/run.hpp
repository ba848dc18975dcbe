#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "bulksurf/stepper/blowup.hpp"
#include "bulksurf/stepper/config.hpp"
#include "bulksurf/stepper/step.hpp"

namespace bulksurf {

enum class Termination { ReachedT, Blowup, DtUnderflow };

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ReachedT: return "reached_T";
    case Termination::Blowup: return "blowup";
    case Termination::DtUnderflow: return "dt_underflow";
  }
  return "?";
}

struct SpeciesNorms {
  double l1_bulk = 0.0, l2_bulk = 0.0, linf_bulk = 0.0;
  double l1_surf = 0.0, l2_surf = 0.0, linf_surf = 0.0;
  double total_mass = 0.0;
};

struct Sample {
  double t = 0.0;
  std::vector<SpeciesNorms> species;
};

struct BlowupInfo {
  double trigger_time = 0.0;
  std::optional<double> t_est;
};

struct RunResult {
  std::vector<Sample> samples;
  State final_state;
  std::optional<BlowupInfo> blowup;
  Termination reason = Termination::ReachedT;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double min_value = 0.0;           // over the initial and every accepted state
  std::vector<StepRecord> steps;    // filled when StepperConfig::record_steps
};

using StepObserver = std::function<void(const StepRecord&)>;

inline std::vector<SpeciesNorms> norms_of(const Grid& g, const State& s) {
  std::vector<SpeciesNorms> out(s.species());
  const double vol = g.cell_volume();
  const auto& faces = g.faces();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    auto& n = out[i];
    for (Eigen::Index k = 0; k < s.c.cols(); ++k) {
      const double v = std::abs(s.c(row, k));
      n.l1_bulk += vol * v;
      n.l2_bulk += vol * v * v;
      n.linf_bulk = std::max(n.linf_bulk, v);
    }
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const double v = std::abs(s.c_surf(row, static_cast<Eigen::Index>(f)));
      n.l1_surf += faces[f].area * v;
      n.l2_surf += faces[f].area * v * v;
      n.linf_surf = std::max(n.linf_surf, v);
    }
    n.l2_bulk = std::sqrt(n.l2_bulk);
    n.l2_surf = std::sqrt(n.l2_surf);
    n.total_mass = total_mass(g, s, i);
  }
  return out;
}

/// Adaptive integration to t_end. The step size is halved on a failed or
/// too-large step (relative sup-norm change above max_rel_change), doubled
/// after grow_after consecutive accepted steps, and capped by dt_max and the
/// advective CFL limit. Crossing blowup_threshold ends the run with an
/// extrapolated blow-up time.
inline RunResult run(const Problem& pb, const State& initial, double t_end,
                     const StepperConfig& cfg, const StepObserver& observer = {}) {
  cfg.validate();
  check_shape(initial, pb.species(), pb.grid());
  require_nonnegative(initial);
  if (!(t_end > initial.t)) throw usage_error("run: t_end must exceed the initial time");

  RunResult res;
  State state = initial;
  res.min_value = state.min_value();
  auto sample = [&]() {
    if (res.samples.empty() || res.samples.back().t < state.t)
      res.samples.push_back({state.t, norms_of(pb.grid(), state)});
  };
  sample();

  const double dt_cap = std::min(cfg.dt_max, cfg.cfl * pb.advective_limit());
  double dt = std::min(cfg.dt_init, dt_cap);
  std::size_t n_out = 1;
  double next_out = initial.t + cfg.output_every;
  const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
  int streak = 0;
  std::vector<double> hist_t{state.t}, hist_sup{state.sup_norm()};
  const bool keep = cfg.record_steps || static_cast<bool>(observer);

  while (t_end - state.t > eps) {
    if (dt < cfg.dt_min) {
      res.reason = Termination::DtUnderflow;
      break;
    }
    double target = state.t + dt;
    if (target >= next_out - eps) target = next_out;
    if (target >= t_end - eps) target = t_end;
    const double dt_try = target - state.t;

    StepRecord rec;
    StepOutcome out = step(pb, state, dt_try, cfg, keep ? &rec : nullptr);
    bool ok = out.failure == StepFailure::None;
    if (ok) {
      const double change = std::max((out.state.c - state.c).cwiseAbs().maxCoeff(),
                                     out.state.c_surf.size()
                                         ? (out.state.c_surf - state.c_surf).cwiseAbs().maxCoeff()
                                         : 0.0);
      ok = change <= cfg.max_rel_change * std::max(state.sup_norm(), cfg.change_floor);
    }
    if (!ok) {
      ++res.rejected;
      streak = 0;
      dt = 0.5 * dt_try;
      continue;
    }

    out.state.t = target;
    state = std::move(out.state);
    ++res.accepted;
    res.min_value = std::min(res.min_value, state.min_value());
    if (keep) {
      rec.after.t = target;
      if (observer) observer(rec);
      if (cfg.record_steps) res.steps.push_back(std::move(rec));
    }
    if (++streak >= cfg.grow_after) {
      dt = std::min(2.0 * dt, dt_cap);
      streak = 0;
    }
    if (target == next_out) {
      sample();
      next_out = initial.t + static_cast<double>(++n_out) * cfg.output_every;
    }

    const double sup = state.sup_norm();
    hist_t.push_back(state.t);
    hist_sup.push_back(sup);
    if (sup >= cfg.blowup_threshold) {
      res.reason = Termination::Blowup;
      BlowupInfo info{state.t, std::nullopt};
      std::vector<double> bt, bs;
      for (std::size_t k = 0; k < hist_t.size(); ++k)
        if (hist_sup[k] > 0.1 * cfg.blowup_threshold) {
          bt.push_back(hist_t[k]);
          bs.push_back(hist_sup[k]);
        }
      if (bt.size() >= 4) info.t_est = estimate_blowup(bt, bs);
      res.blowup = info;
      break;
    }
  }
  sample();
  res.final_state = std::move(state);
  return res;
}

}  // namespace bulksurf
