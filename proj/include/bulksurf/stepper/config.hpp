#pragma once

#include <string>

#include "bulksurf/errors.hpp"

namespace bulksurf {

struct StepperConfig {
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double dt_max = 2e-3;
  double cfl = 0.9;                // fraction of the upwind stability limit
  double lin_tol = 1e-12;          // relative CG residual
  int max_lin_iter = 2000;
  double blowup_threshold = 1e6;   // sup-norm trigger
  double positivity_tol = 1e-12;   // a step producing values below -tol is rejected
  double output_every = 0.1;       // sampling interval for norms
  double max_rel_change = 0.1;     // reject steps changing the sup-norm more than this
  double change_floor = 1e-6;      // denominator floor for the relative change
  int grow_after = 5;              // accepted steps before dt is doubled
  bool record_steps = false;       // keep a StepRecord per accepted step

  void validate() const {
    if (!(dt_min > 0.0 && dt_init > 0.0 && dt_max > 0.0))
      throw usage_error("stepper: dt_min, dt_init, dt_max must be > 0");
    if (!(dt_min <= dt_init && dt_init <= dt_max))
      throw usage_error("stepper: need dt_min <= dt_init <= dt_max");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw usage_error("stepper: cfl must lie in (0, 1]");
    if (!(lin_tol > 0.0)) throw usage_error("stepper: lin_tol must be > 0");
    if (max_lin_iter < 1) throw usage_error("stepper: max_lin_iter must be >= 1");
    if (!(blowup_threshold > 0.0)) throw usage_error("stepper: blowup_threshold must be > 0");
    if (!(positivity_tol >= 0.0)) throw usage_error("stepper: positivity_tol must be >= 0");
    if (!(output_every > 0.0)) throw usage_error("stepper: output_every must be > 0");
    if (!(max_rel_change > 0.0)) throw usage_error("stepper: max_rel_change must be > 0");
    if (!(change_floor > 0.0)) throw usage_error("stepper: change_floor must be > 0");
    if (grow_after < 1) throw usage_error("stepper: grow_after must be >= 1");
  }
};

}  // namespace bulksurf
