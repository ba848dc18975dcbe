#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "bulksurf/disc/grid.hpp"
#include "bulksurf/errors.hpp"

namespace bulksurf {

/// Concentrations at time t: c is species x bulk cells (amount/volume),
/// c_surf is species x surface cells (amount/area).
struct State {
  double t = 0.0;
  Eigen::MatrixXd c;
  Eigen::MatrixXd c_surf;

  static State zeros(std::size_t n_species, const Grid& g) {
    State s;
    s.c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_species),
                                static_cast<Eigen::Index>(g.cells()));
    s.c_surf = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_species),
                                     static_cast<Eigen::Index>(g.surface_cells()));
    return s;
  }

  std::size_t species() const { return static_cast<std::size_t>(c.rows()); }

  bool finite() const { return c.allFinite() && c_surf.allFinite(); }

  double min_value() const {
    double m = c.size() ? c.minCoeff() : 0.0;
    if (c_surf.size()) m = std::min(m, c_surf.minCoeff());
    return m;
  }

  double sup_norm() const {
    double m = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
    if (c_surf.size()) m = std::max(m, c_surf.cwiseAbs().maxCoeff());
    return m;
  }
};

inline void check_shape(const State& s, std::size_t n_species, const Grid& g) {
  if (s.species() != n_species || static_cast<std::size_t>(s.c.cols()) != g.cells() ||
      static_cast<std::size_t>(s.c_surf.rows()) != n_species ||
      static_cast<std::size_t>(s.c_surf.cols()) != g.surface_cells())
    throw usage_error("state shape does not match grid and species");
  if (!s.finite()) throw domain_error("state has non-finite entries");
}

inline void require_nonnegative(const State& s) {
  if (s.min_value() < 0.0) throw domain_error("state has negative concentrations");
}

// Amount of species i in the bulk plus on the surface.
inline double total_mass(const Grid& g, const State& s, std::size_t i) {
  const auto row = static_cast<Eigen::Index>(i);
  double m = g.cell_volume() * s.c.row(row).sum();
  const auto& faces = g.faces();
  for (std::size_t f = 0; f < faces.size(); ++f)
    m += faces[f].area * s.c_surf(row, static_cast<Eigen::Index>(f));
  return m;
}

}  // namespace bulksurf
