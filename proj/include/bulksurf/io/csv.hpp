#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bulksurf/disc/snapshot.hpp"
#include "bulksurf/stepper/run.hpp"

namespace bulksurf {

inline constexpr const char* kCsvHeader =
    "t,species,l1_bulk,l2_bulk,linf_bulk,l1_surf,l2_surf,linf_surf,total_mass";

/// One row per (sample time, species), all values with 17 significant digits.
inline void write_csv(std::ostream& os, const std::vector<Sample>& samples,
                      const std::vector<std::string>& names) {
  os << kCsvHeader << '\n';
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < s.species.size(); ++i) {
      const auto& n = s.species[i];
      os << format_g17(s.t) << ',' << names.at(i) << ',' << format_g17(n.l1_bulk) << ','
         << format_g17(n.l2_bulk) << ',' << format_g17(n.linf_bulk) << ','
         << format_g17(n.l1_surf) << ',' << format_g17(n.l2_surf) << ','
         << format_g17(n.linf_surf) << ',' << format_g17(n.total_mass) << '\n';
    }
  }
}

inline std::string csv_string(const std::vector<Sample>& samples,
                              const std::vector<std::string>& names) {
  std::ostringstream os;
  write_csv(os, samples, names);
  return os.str();
}

}  // namespace bulksurf
