#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "bulksurf/disc/grid.hpp"
#include "bulksurf/disc/state.hpp"

namespace bulksurf {

enum class Field { Bulk, Surface };

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Plain-text dump of one species field, one line per cell: "i x [y] value".
inline void write_snapshot(std::ostream& os, const Grid& g, const State& s, std::size_t species,
                           const std::string& name, Field field) {
  os << "# t=" << format_g17(s.t) << '\n'
     << "# species=" << name << '\n'
     << "# field=" << (field == Field::Bulk ? "bulk" : "surface") << '\n'
     << "# grid dim=" << g.dim() << " nx=" << g.nx() << " ny=" << g.ny()
     << " lx=" << format_g17(g.lx()) << " ly=" << format_g17(g.ly()) << '\n';
  const auto row = static_cast<Eigen::Index>(species);
  auto line = [&](std::size_t i, double x, double y, double v) {
    os << i << ' ' << format_g17(x);
    if (g.dim() == 2) os << ' ' << format_g17(y);
    os << ' ' << format_g17(v) << '\n';
  };
  if (field == Field::Bulk) {
    for (std::size_t k = 0; k < g.cells(); ++k) {
      const auto xy = g.cell_center(k);
      line(k, xy[0], xy[1], s.c(row, static_cast<Eigen::Index>(k)));
    }
  } else {
    const auto& faces = g.faces();
    for (std::size_t f = 0; f < faces.size(); ++f)
      line(f, faces[f].x, faces[f].y, s.c_surf(row, static_cast<Eigen::Index>(f)));
  }
}

}  // namespace bulksurf
