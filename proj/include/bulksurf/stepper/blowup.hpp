#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>

#include "bulksurf/errors.hpp"

namespace bulksurf {

/// Extrapolated blow-up time from a sup-norm history. Fits a least-squares
/// line through (t, 1/|c|_inf) over the last `window` samples and returns its
/// root. For profiles ~ 1/(T - t) the reciprocals are exactly collinear.
/// Returns nothing unless the fitted slope is negative.
inline std::optional<double> estimate_blowup(std::span<const double> times,
                                             std::span<const double> sup_norms,
                                             std::size_t window = 8) {
  if (times.size() != sup_norms.size()) throw usage_error("estimate_blowup: length mismatch");
  const std::size_t n = std::min(window, times.size());
  if (n < 2) return std::nullopt;
  const std::size_t first = times.size() - n;
  double mt = 0.0, my = 0.0;
  for (std::size_t k = first; k < times.size(); ++k) {
    if (!(sup_norms[k] > 0.0)) return std::nullopt;
    mt += times[k];
    my += 1.0 / sup_norms[k];
  }
  mt /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double stt = 0.0, sty = 0.0;
  for (std::size_t k = first; k < times.size(); ++k) {
    const double dt = times[k] - mt;
    stt += dt * dt;
    sty += dt * (1.0 / sup_norms[k] - my);
  }
  if (!(stt > 0.0)) return std::nullopt;
  const double slope = sty / stt;
  if (!(slope < 0.0)) return std::nullopt;
  return mt - my / slope;
}

}  // namespace bulksurf
