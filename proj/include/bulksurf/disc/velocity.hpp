#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "bulksurf/disc/grid.hpp"
#include "bulksurf/errors.hpp"

namespace bulksurf {

/// Prescribed incompressible velocity with v.n = 0 on the boundary. The
/// stream-function variant uses psi = A sin(pi x/lx) sin(pi y/ly) and
/// v = (d psi/dy, -d psi/dx); in 1D only the zero field satisfies both
/// constraints.
struct VelocityField {
  enum class Kind { Zero, StreamFunction };
  Kind kind = Kind::Zero;
  double amplitude = 0.0;

  static VelocityField zero() { return {}; }
  static VelocityField stream(double amplitude) { return {Kind::StreamFunction, amplitude}; }
};

/// Volumetric fluxes through interior faces. fx[(i) + (nx+1) j] is the flux in
/// +x through the face at x = i hx of row j; fy[i + nx j] the flux in +y
/// through the face at y = j hy of column i. Fluxes are differences of nodal
/// stream-function values, so each cell's net outflow telescopes to zero and
/// boundary fluxes vanish identically.
struct FaceFluxes {
  std::vector<double> fx;
  std::vector<double> fy;
};

inline FaceFluxes face_fluxes(const Grid& g, const VelocityField& v) {
  FaceFluxes f;
  if (g.dim() == 1) {
    if (v.kind != VelocityField::Kind::Zero)
      throw usage_error("velocity: a stream-function field needs a 2D grid");
    f.fx.assign(g.nx() + 1, 0.0);
    return f;
  }
  const std::size_t nx = g.nx(), ny = g.ny();
  std::vector<double> psi((nx + 1) * (ny + 1), 0.0);
  if (v.kind == VelocityField::Kind::StreamFunction) {
    using std::numbers::pi;
    for (std::size_t j = 1; j < ny; ++j)
      for (std::size_t i = 1; i < nx; ++i)
        psi[i + (nx + 1) * j] = v.amplitude * std::sin(pi * i / static_cast<double>(nx)) *
                                std::sin(pi * j / static_cast<double>(ny));
  }
  auto node = [&](std::size_t i, std::size_t j) { return psi[i + (nx + 1) * j]; };
  f.fx.assign((nx + 1) * ny, 0.0);
  f.fy.assign(nx * (ny + 1), 0.0);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i) f.fx[i + (nx + 1) * j] = node(i, j + 1) - node(i, j);
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) f.fy[i + nx * j] = -(node(i + 1, j) - node(i, j));
  return f;
}

// Net outflow of every bulk cell.
inline std::vector<double> net_outflow(const Grid& g, const FaceFluxes& f) {
  std::vector<double> out(g.cells(), 0.0);
  if (g.dim() == 1) return out;
  const std::size_t nx = g.nx(), ny = g.ny();
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      out[g.index(i, j)] = f.fx[i + 1 + (nx + 1) * j] - f.fx[i + (nx + 1) * j] +
                           f.fy[i + nx * (j + 1)] - f.fy[i + nx * j];
  return out;
}

/// Largest dt for which explicit upwind keeps every cell value a convex
/// combination: min over cells of V / (sum of outgoing fluxes).
inline double advective_dt_limit(const Grid& g, const FaceFluxes& f) {
  double limit = std::numeric_limits<double>::infinity();
  if (g.dim() == 1) return limit;
  const std::size_t nx = g.nx(), ny = g.ny();
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const double out = std::max(0.0, f.fx[i + 1 + (nx + 1) * j]) +
                         std::max(0.0, -f.fx[i + (nx + 1) * j]) +
                         std::max(0.0, f.fy[i + nx * (j + 1)]) + std::max(0.0, -f.fy[i + nx * j]);
      if (out > 0.0) limit = std::min(limit, g.cell_volume() / out);
    }
  return limit;
}

}  // namespace bulksurf
