#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bulksurf/disc/grid.hpp"
#include "bulksurf/disc/state.hpp"
#include "bulksurf/model/sorption.hpp"

namespace bulksurf {

struct CouplingSources {
  Eigen::MatrixXd bulk;     // species x cells, amount/volume/time
  Eigen::MatrixXd surface;  // species x faces, amount/area/time
};

/// Sorption flux at every boundary face, with the bulk trace taken as the
/// adjacent cell value. The face gains s_i and the adjacent cell loses
/// s_i * area / volume, so the exchanged amounts cancel exactly.
inline CouplingSources apply_coupling(const Grid& g, const SorptionModel& model,
                                      const State& state) {
  check_shape(state, model.size(), g);
  require_nonnegative(state);
  const auto n = static_cast<Eigen::Index>(model.size());
  CouplingSources out{Eigen::MatrixXd::Zero(n, state.c.cols()),
                      Eigen::MatrixXd::Zero(n, state.c_surf.cols())};
  const double inv_v = 1.0 / g.cell_volume();
  std::vector<double> cs(model.size());
  const auto& faces = g.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto fi = static_cast<Eigen::Index>(f);
    const auto k = static_cast<Eigen::Index>(faces[f].cell);
    for (Eigen::Index i = 0; i < n; ++i) cs[static_cast<std::size_t>(i)] = state.c_surf(i, fi);
    const double theta = model.occupancy(cs);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = model.rate(static_cast<std::size_t>(i), state.c(i, k), state.c_surf(i, fi), theta);
      out.surface(i, fi) += s;
      out.bulk(i, k) -= s * faces[f].area * inv_v;
    }
  }
  return out;
}

}  // namespace bulksurf
