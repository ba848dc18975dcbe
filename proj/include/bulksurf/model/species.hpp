#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "bulksurf/errors.hpp"

namespace bulksurf {

/// The chemical cast: N species with constant bulk and surface diffusivities.
class SpeciesSystem {
 public:
  SpeciesSystem(std::vector<std::string> names, std::vector<double> d_bulk,
                std::vector<double> d_surf)
      : names_(std::move(names)), d_bulk_(std::move(d_bulk)), d_surf_(std::move(d_surf)) {
    if (names_.empty()) throw usage_error("species system needs at least one species");
    if (d_bulk_.size() != names_.size() || d_surf_.size() != names_.size())
      throw usage_error("species system: d_bulk/d_surf length must equal number of species");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw usage_error("species system: empty species name");
      if (!seen.insert(names_[i]).second)
        throw usage_error("species system: duplicate species name '" + names_[i] + "'");
      if (!(d_bulk_[i] > 0.0))
        throw usage_error("species system: d_bulk of '" + names_[i] + "' must be > 0");
      if (!(d_surf_[i] > 0.0))
        throw usage_error("species system: d_surf of '" + names_[i] + "' must be > 0");
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  double d_bulk(std::size_t i) const { return d_bulk_.at(i); }
  double d_surf(std::size_t i) const { return d_surf_.at(i); }

  // Index of a named species, or size() if absent.
  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return names_.size();
  }

 private:
  std::vector<std::string> names_;
  std::vector<double> d_bulk_;
  std::vector<double> d_surf_;
};

}  // namespace bulksurf
