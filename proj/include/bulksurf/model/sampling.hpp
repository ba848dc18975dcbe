#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/sobol.hpp>
#include <boost/random/uniform_01.hpp>

#include "bulksurf/errors.hpp"

namespace bulksurf {

/// Deterministic sample set for the structural checks: a Sobol sequence with a
/// seeded Cranley-Patterson shift, preceded by the origin, the far corner and
/// the axis points of the box.
struct SamplingPlan {
  std::size_t count = 4096;
  std::uint64_t seed = 20240521;
};

inline std::vector<std::vector<double>> sample_box(std::size_t dim, double radius,
                                                   const SamplingPlan& plan) {
  if (dim == 0) throw usage_error("sample_box: zero dimension");
  if (!(radius > 0.0)) throw usage_error("sample_box: radius must be > 0");
  std::vector<std::vector<double>> pts;
  pts.reserve(plan.count);
  auto push = [&](std::vector<double> p) {
    if (pts.size() < plan.count) pts.push_back(std::move(p));
  };
  push(std::vector<double>(dim, 0.0));
  push(std::vector<double>(dim, radius));
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<double> p(dim, 0.0);
    p[k] = radius;
    push(std::move(p));
  }

  boost::random::mt19937_64 rng(plan.seed);
  boost::random::uniform_01<double> unit;
  std::vector<double> shift(dim);
  for (auto& s : shift) s = unit(rng);

  boost::random::sobol qrng(dim);
  const double span = static_cast<double>(qrng.max()) - static_cast<double>(qrng.min()) + 1.0;
  while (pts.size() < plan.count) {
    std::vector<double> p(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const double u = (static_cast<double>(qrng() - qrng.min())) / span + shift[k];
      p[k] = radius * (u - std::floor(u));
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace bulksurf
