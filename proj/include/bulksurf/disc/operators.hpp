#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Sparse>

#include "bulksurf/disc/grid.hpp"
#include "bulksurf/disc/velocity.hpp"
#include "bulksurf/errors.hpp"

namespace bulksurf {

/// Row-compressed sparse operator acting on a cell field.
using SparseOperator = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplets = std::vector<Eigen::Triplet<double>>;

namespace detail {
// Two-point flux between cells a and b with transmissibility w / measure.
inline void add_exchange(Triplets& t, std::size_t a, std::size_t b, double wa, double wb) {
  const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
  t.emplace_back(ia, ib, wa);
  t.emplace_back(ia, ia, -wa);
  t.emplace_back(ib, ia, wb);
  t.emplace_back(ib, ib, -wb);
}

inline SparseOperator from_triplets(std::size_t n, const Triplets& t) {
  SparseOperator op(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  op.setFromTriplets(t.begin(), t.end());
  return op;
}
}  // namespace detail

/// Cell-centred two-point-flux approximation of d * Laplacian with zero
/// normal flux on the boundary (the sorption flux enters separately).
inline SparseOperator assemble_bulk_diffusion(const Grid& g, double d) {
  if (!(d > 0.0)) throw usage_error("assemble_bulk_diffusion: d must be > 0");
  Triplets t;
  const double wx = d / (g.hx() * g.hx());
  const double wy = d / (g.hy() * g.hy());
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      if (i + 1 < g.nx()) detail::add_exchange(t, g.index(i, j), g.index(i + 1, j), wx, wx);
      if (g.dim() == 2 && j + 1 < g.ny())
        detail::add_exchange(t, g.index(i, j), g.index(i, j + 1), wy, wy);
    }
  return detail::from_triplets(g.cells(), t);
}

/// Laplace-Beltrami operator on the boundary chain. In 2D the chain is a
/// closed loop; neighbouring faces exchange through the distance between
/// their centres, and row f is divided by the face length. In 1D the surface
/// is two points and the operator vanishes.
inline SparseOperator assemble_surface_diffusion(const Grid& g, double d_surf) {
  if (!(d_surf > 0.0)) throw usage_error("assemble_surface_diffusion: d must be > 0");
  const auto& faces = g.faces();
  const std::size_t n = faces.size();
  Triplets t;
  if (g.dim() == 2) {
    for (std::size_t f = 0; f < n; ++f) {
      const std::size_t next = (f + 1) % n;
      const double dist = 0.5 * (faces[f].area + faces[next].area);
      const double w = d_surf / dist;
      detail::add_exchange(t, f, next, w / faces[f].area, w / faces[next].area);
    }
  }
  return detail::from_triplets(n, t);
}

/// First-order upwind discretisation of -v.grad c in conservative form:
/// (A c)_K = -(1/V) sum over faces of F_out c_upwind. With the discretely
/// divergence-free stream-function fluxes constants are annihilated and no
/// mass crosses the boundary.
inline SparseOperator assemble_advection(const Grid& g, const VelocityField& v) {
  const FaceFluxes f = face_fluxes(g, v);
  Triplets t;
  if (g.dim() == 2) {
    const double inv_v = 1.0 / g.cell_volume();
    auto upwind = [&](std::size_t a, std::size_t b, double flux) {
      // flux > 0 moves mass from a to b
      if (flux > 0.0) {
        t.emplace_back(a, a, -flux * inv_v);
        t.emplace_back(b, a, flux * inv_v);
      } else if (flux < 0.0) {
        t.emplace_back(b, b, flux * inv_v);
        t.emplace_back(a, b, -flux * inv_v);
      }
    };
    const std::size_t nx = g.nx(), ny = g.ny();
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i + 1 < nx; ++i)
        upwind(g.index(i, j), g.index(i + 1, j), f.fx[i + 1 + (nx + 1) * j]);
    for (std::size_t j = 0; j + 1 < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i)
        upwind(g.index(i, j), g.index(i, j + 1), f.fy[i + nx * (j + 1)]);
  }
  return detail::from_triplets(g.cells(), t);
}

inline std::vector<double> row_sums(const SparseOperator& op) {
  std::vector<double> s(static_cast<std::size_t>(op.rows()), 0.0);
  for (Eigen::Index r = 0; r < op.outerSize(); ++r)
    for (SparseOperator::InnerIterator it(op, r); it; ++it) s[static_cast<std::size_t>(r)] += it.value();
  return s;
}

}  // namespace bulksurf
