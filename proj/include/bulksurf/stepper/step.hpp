#pragma once

#include <algorithm>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bulksurf/stepper/config.hpp"
#include "bulksurf/stepper/linear_solve.hpp"
#include "bulksurf/stepper/problem.hpp"

namespace bulksurf {

enum class StepFailure { None, LinearSolver, Positivity, OccupancyOvershoot, NonFinite };

inline std::string_view to_string(StepFailure f) {
  switch (f) {
    case StepFailure::None: return "none";
    case StepFailure::LinearSolver: return "linear_solver";
    case StepFailure::Positivity: return "positivity";
    case StepFailure::OccupancyOvershoot: return "occupancy_overshoot";
    case StepFailure::NonFinite: return "non_finite";
  }
  return "?";
}

/// Intermediate data of one accepted step, enough to replay frozen-data
/// auxiliary problems on exactly the same discrete operators.
struct StepRecord {
  double dt = 0.0;
  State before;
  Eigen::MatrixXd reaction_bulk;     // c after reactions minus c after advection
  Eigen::MatrixXd reaction_surface;  // same on the surface
  State after_sorption;              // state entering the diffusion solves
  State after;
};

struct StepOutcome {
  State state;
  StepFailure failure = StepFailure::None;
};

namespace detail {

inline void advect(const Problem& pb, double dt, Eigen::MatrixXd& c) {
  if (pb.advection().nonZeros() == 0) return;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    const Eigen::VectorXd ci = c.row(i).transpose();
    c.row(i) = (ci + dt * (pb.advection() * ci)).transpose();
  }
}

// Patankar update c <- (c + dt P) / (1 + dt delta) column by column.
inline void react(const ReactionNetwork& net, double dt, Eigen::MatrixXd& c) {
  if (net.empty()) return;
  const std::size_t n = net.species();
  std::vector<double> x(n), prod(n), dest(n);
  for (Eigen::Index k = 0; k < c.cols(); ++k) {
    for (std::size_t i = 0; i < n; ++i) x[i] = c(static_cast<Eigen::Index>(i), k);
    net.production_destruction(x, prod, dest);
    for (std::size_t i = 0; i < n; ++i)
      c(static_cast<Eigen::Index>(i), k) = (x[i] + dt * prod[i]) / (1.0 + dt * dest[i]);
  }
}

// Sorption exchange with the free-site factor frozen at the incoming surface
// state and both transfer directions implicit:
//   V c_K' = V c_K + dt sum_f a_f (k_de c_f' - k_ad g(theta_f) c_K')
//   c_f'   = c_f   + dt       (k_ad g(theta_f) c_K' - k_de c_f')
// Each bulk cell with its faces is a small M-matrix system with a closed-form
// solution; the exchanged amounts cancel exactly.
inline bool sorb(const Problem& pb, double dt, Eigen::MatrixXd& c, Eigen::MatrixXd& cs) {
  const auto& g = pb.grid();
  const auto& model = pb.sorption();
  const auto& faces = g.faces();
  const std::size_t n = pb.species();
  const std::size_t nf = faces.size();

  std::vector<double> theta(nf), col(n);
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t i = 0; i < n; ++i)
      col[i] = cs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f));
    theta[f] = model.occupancy(col);
  }

  const double vol = g.cell_volume();
  for (std::size_t k = 0; k < g.cells(); ++k) {
    const auto& fk = g.faces_of_cell(k);
    if (fk.empty()) continue;
    const auto kk = static_cast<Eigen::Index>(k);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double beta = dt * model.k_de(i);
      const double ck = c(ii, kk);
      // Increment form keeps equilibrium states (alpha c_K = beta c_f) fixed
      // bitwise.
      double flux = 0.0;
      double denom = vol;
      for (std::size_t f : fk) {
        const double alpha = dt * model.k_ad(i) * model.adsorption_factor(i, theta[f]);
        const double a = faces[f].area;
        denom += a * alpha / (1.0 + beta);
        flux += a * (beta * cs(ii, static_cast<Eigen::Index>(f)) - alpha * ck) / (1.0 + beta);
      }
      const double ck_new = ck + flux / denom;
      c(ii, kk) = ck_new;
      for (std::size_t f : fk) {
        const auto ff = static_cast<Eigen::Index>(f);
        const double alpha = dt * model.k_ad(i) * model.adsorption_factor(i, theta[f]);
        cs(ii, ff) += (alpha * ck_new - beta * cs(ii, ff)) / (1.0 + beta);
      }
    }
  }

  // Adsorption switches off at full occupancy, so the exchange alone may not
  // carry a face from below capacity to above it.
  if (model.has_capacity()) {
    for (std::size_t f = 0; f < nf; ++f) {
      for (std::size_t i = 0; i < n; ++i)
        col[i] = cs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f));
      if (model.occupancy(col) > std::max(theta[f], 1.0) + 1e-12) return false;
    }
  }
  return true;
}

// Backward-Euler diffusion (I - dt L) x = b, solved in the symmetric form
// M (I - dt L) x = M b with the diagonal cell measures M.
inline bool diffuse(const SparseOperator& lap, const Eigen::VectorXd& measure, double dt,
                    const StepperConfig& cfg, Eigen::Ref<Eigen::MatrixXd> c_row_major,
                    Eigen::Index row) {
  if (lap.nonZeros() == 0) return true;
  const Eigen::Index n = lap.rows();
  SparseOperator sys = measure.asDiagonal() * lap;
  sys *= -dt;
  for (Eigen::Index k = 0; k < n; ++k) sys.coeffRef(k, k) += measure(k);
  const Eigen::VectorXd b = c_row_major.row(row).transpose();
  const Eigen::VectorXd rhs = measure.cwiseProduct(b);
  const auto res = solve_spd(sys, rhs, cfg.lin_tol, cfg.max_lin_iter, &b);
  if (!res.converged) return false;
  c_row_major.row(row) = res.x.transpose();
  return true;
}

}  // namespace detail

/// One split step of the full system:
///   1. explicit upwind advection,
///   2. Patankar reaction update in bulk and on the surface,
///   3. implicit sorption exchange,
///   4. backward-Euler bulk and surface diffusion.
/// Every stage maps nonnegative states to nonnegative states (stage 1 under
/// the CFL bound).
inline StepOutcome step(const Problem& pb, const State& state, double dt,
                        const StepperConfig& cfg, StepRecord* record = nullptr) {
  if (!(dt > 0.0)) throw usage_error("step: dt must be > 0");
  StepOutcome out{state, StepFailure::None};
  auto& c = out.state.c;
  auto& cs = out.state.c_surf;

  detail::advect(pb, dt, c);
  Eigen::MatrixXd c_adv, cs_adv;
  if (record) {
    c_adv = c;
    cs_adv = cs;
  }
  detail::react(pb.bulk_reactions(), dt, c);
  detail::react(pb.surface_reactions(), dt, cs);
  if (record) {
    record->dt = dt;
    record->before = state;
    record->reaction_bulk = c - c_adv;
    record->reaction_surface = cs - cs_adv;
  }

  if (!detail::sorb(pb, dt, c, cs)) {
    out.failure = StepFailure::OccupancyOvershoot;
    return out;
  }
  if (record) {
    record->after_sorption = out.state;
    record->after_sorption.t = state.t + dt;
  }

  const auto& g = pb.grid();
  const Eigen::VectorXd vol = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.cells()), g.cell_volume());
  Eigen::VectorXd area(static_cast<Eigen::Index>(g.surface_cells()));
  for (std::size_t f = 0; f < g.surface_cells(); ++f) area(static_cast<Eigen::Index>(f)) = g.faces()[f].area;
  for (std::size_t i = 0; i < pb.species(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    if (!detail::diffuse(pb.bulk_diffusion(i), vol, dt, cfg, c, row) ||
        !detail::diffuse(pb.surface_diffusion(i), area, dt, cfg, cs, row)) {
      out.failure = StepFailure::LinearSolver;
      return out;
    }
  }

  out.state.t = state.t + dt;
  if (!out.state.finite()) {
    out.failure = StepFailure::NonFinite;
  } else if (out.state.min_value() < -cfg.positivity_tol) {
    out.failure = StepFailure::Positivity;
  }
  if (record) record->after = out.state;
  return out;
}

}  // namespace bulksurf
