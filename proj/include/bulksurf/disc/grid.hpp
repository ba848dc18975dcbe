#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "bulksurf/errors.hpp"

namespace bulksurf {

enum class Normal { MinusX, PlusX, MinusY, PlusY };

/// A boundary face of the bulk grid. Faces double as the surface cells.
struct BoundaryFace {
  double area = 0.0;  // arclength in 2D, 1 in 1D
  Normal normal = Normal::MinusX;
  std::size_t cell = 0;  // adjacent bulk cell
  double x = 0.0, y = 0.0;  // face centre
};

/// Uniform cell-centred grid on [0,lx] (1D) or [0,lx]x[0,ly] (2D). Cells are
/// numbered k = i + nx*j. In 2D the boundary faces form one closed
/// counter-clockwise chain starting at the bottom-left corner; in 1D there are
/// two isolated faces (left, right).
class Grid {
 public:
  Grid(int dim, std::size_t nx, std::size_t ny, double lx, double ly)
      : dim_(dim), nx_(nx), ny_(dim == 1 ? 1 : ny), lx_(lx), ly_(dim == 1 ? 1.0 : ly) {
    if (dim_ != 1 && dim_ != 2) throw usage_error("grid: dim must be 1 or 2");
    if (nx_ < 2 || (dim_ == 2 && ny_ < 2)) throw usage_error("grid: need at least 2 cells per axis");
    if (!(lx_ > 0.0) || !(ly_ > 0.0)) throw usage_error("grid: extents must be > 0");
    hx_ = lx_ / static_cast<double>(nx_);
    hy_ = ly_ / static_cast<double>(ny_);
    build_faces();
  }

  int dim() const { return dim_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  std::size_t cells() const { return nx_ * ny_; }
  double cell_volume() const { return dim_ == 1 ? hx_ : hx_ * hy_; }
  std::size_t index(std::size_t i, std::size_t j) const { return i + nx_ * j; }

  std::array<double, 2> cell_center(std::size_t k) const {
    const std::size_t i = k % nx_, j = k / nx_;
    return {(static_cast<double>(i) + 0.5) * hx_,
            dim_ == 1 ? 0.0 : (static_cast<double>(j) + 0.5) * hy_};
  }

  const std::vector<BoundaryFace>& faces() const { return faces_; }
  std::size_t surface_cells() const { return faces_.size(); }
  // Boundary faces touching bulk cell k (0, 1 or 2 entries).
  const std::vector<std::size_t>& faces_of_cell(std::size_t k) const { return cell_faces_[k]; }

  double domain_measure() const { return dim_ == 1 ? lx_ : lx_ * ly_; }
  double boundary_measure() const { return dim_ == 1 ? 2.0 : 2.0 * (lx_ + ly_); }

 private:
  void add_face(double area, Normal n, std::size_t cell, double x, double y) {
    cell_faces_[cell].push_back(faces_.size());
    faces_.push_back({area, n, cell, x, y});
  }

  void build_faces() {
    cell_faces_.assign(cells(), {});
    if (dim_ == 1) {
      add_face(1.0, Normal::MinusX, 0, 0.0, 0.0);
      add_face(1.0, Normal::PlusX, nx_ - 1, lx_, 0.0);
      return;
    }
    for (std::size_t i = 0; i < nx_; ++i)
      add_face(hx_, Normal::MinusY, index(i, 0), (i + 0.5) * hx_, 0.0);
    for (std::size_t j = 0; j < ny_; ++j)
      add_face(hy_, Normal::PlusX, index(nx_ - 1, j), lx_, (j + 0.5) * hy_);
    for (std::size_t i = nx_; i-- > 0;)
      add_face(hx_, Normal::PlusY, index(i, ny_ - 1), (i + 0.5) * hx_, ly_);
    for (std::size_t j = ny_; j-- > 0;)
      add_face(hy_, Normal::MinusX, index(0, j), 0.0, (j + 0.5) * hy_);
  }

  int dim_;
  std::size_t nx_, ny_;
  double lx_, ly_, hx_ = 0.0, hy_ = 0.0;
  std::vector<BoundaryFace> faces_;
  std::vector<std::vector<std::size_t>> cell_faces_;
};

inline Grid build_grid(int dim, std::array<std::size_t, 2> counts,
                       std::array<double, 2> extents = {1.0, 1.0}) {
  return Grid(dim, counts[0], counts[1], extents[0], extents[1]);
}

}  // namespace bulksurf
