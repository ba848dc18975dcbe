#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bulksurf/disc/coupling.hpp"
#include "bulksurf/disc/grid.hpp"
#include "bulksurf/disc/operators.hpp"
#include "bulksurf/disc/state.hpp"
#include "bulksurf/disc/velocity.hpp"
#include "bulksurf/model/reactions.hpp"
#include "bulksurf/model/sorption.hpp"
#include "bulksurf/model/species.hpp"

namespace bulksurf {

/// Everything that defines the semi-discrete system, plus the assembled
/// operators. Immutable once built.
class Problem {
 public:
  Problem(Grid grid, SpeciesSystem system, SorptionModel model, ReactionNetwork bulk,
          ReactionNetwork surface, VelocityField velocity)
      : grid_(std::move(grid)),
        system_(std::move(system)),
        model_(std::move(model)),
        bulk_(std::move(bulk)),
        surface_(std::move(surface)),
        velocity_(velocity) {
    const std::size_t n = system_.size();
    if (model_.size() != n || bulk_.species() != n || surface_.species() != n)
      throw usage_error("problem: species count differs between system, sorption and networks");
    for (std::size_t i = 0; i < n; ++i) {
      bulk_diffusion_.push_back(assemble_bulk_diffusion(grid_, system_.d_bulk(i)));
      surface_diffusion_.push_back(assemble_surface_diffusion(grid_, system_.d_surf(i)));
    }
    advection_ = assemble_advection(grid_, velocity_);
    advective_limit_ = advective_dt_limit(grid_, face_fluxes(grid_, velocity_));
  }

  const Grid& grid() const { return grid_; }
  const SpeciesSystem& system() const { return system_; }
  const SorptionModel& sorption() const { return model_; }
  const ReactionNetwork& bulk_reactions() const { return bulk_; }
  const ReactionNetwork& surface_reactions() const { return surface_; }
  const VelocityField& velocity() const { return velocity_; }
  std::size_t species() const { return system_.size(); }

  const SparseOperator& bulk_diffusion(std::size_t i) const { return bulk_diffusion_[i]; }
  const SparseOperator& surface_diffusion(std::size_t i) const { return surface_diffusion_[i]; }
  const SparseOperator& advection() const { return advection_; }
  double advective_limit() const { return advective_limit_; }

 private:
  Grid grid_;
  SpeciesSystem system_;
  SorptionModel model_;
  ReactionNetwork bulk_;
  ReactionNetwork surface_;
  VelocityField velocity_;
  std::vector<SparseOperator> bulk_diffusion_;
  std::vector<SparseOperator> surface_diffusion_;
  SparseOperator advection_;
  double advective_limit_ = 0.0;
};

/// Time derivative of the semi-discrete system at a state.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> semi_discrete_rhs(const Problem& pb,
                                                                     const State& s) {
  auto src = apply_coupling(pb.grid(), pb.sorption(), s);
  Eigen::MatrixXd bulk = std::move(src.bulk);
  Eigen::MatrixXd surf = std::move(src.surface);
  const std::size_t n = pb.species();
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd c = s.c.row(row).transpose();
    const Eigen::VectorXd cs = s.c_surf.row(row).transpose();
    bulk.row(row) += (pb.bulk_diffusion(i) * c + pb.advection() * c).transpose();
    surf.row(row) += (pb.surface_diffusion(i) * cs).transpose();
  }
  std::vector<double> x(n), r(n);
  for (Eigen::Index k = 0; k < s.c.cols(); ++k) {
    for (std::size_t i = 0; i < n; ++i) x[i] = s.c(static_cast<Eigen::Index>(i), k);
    pb.bulk_reactions().rates(x, r);
    for (std::size_t i = 0; i < n; ++i) bulk(static_cast<Eigen::Index>(i), k) += r[i];
  }
  for (Eigen::Index f = 0; f < s.c_surf.cols(); ++f) {
    for (std::size_t i = 0; i < n; ++i) x[i] = s.c_surf(static_cast<Eigen::Index>(i), f);
    pb.surface_reactions().rates(x, r);
    for (std::size_t i = 0; i < n; ++i) surf(static_cast<Eigen::Index>(i), f) += r[i];
  }
  return {std::move(bulk), std::move(surf)};
}

}  // namespace bulksurf
