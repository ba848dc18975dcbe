#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bulksurf/errors.hpp"

namespace bulksurf {

enum class SorptionVariant { Henry, Langmuir, Volmer, Frumkin, VanDerWaals };

inline constexpr SorptionVariant kAllSorptionVariants[] = {
    SorptionVariant::Henry, SorptionVariant::Langmuir, SorptionVariant::Volmer,
    SorptionVariant::Frumkin, SorptionVariant::VanDerWaals};

inline std::string_view to_string(SorptionVariant v) {
  switch (v) {
    case SorptionVariant::Henry: return "henry";
    case SorptionVariant::Langmuir: return "langmuir";
    case SorptionVariant::Volmer: return "volmer";
    case SorptionVariant::Frumkin: return "frumkin";
    case SorptionVariant::VanDerWaals: return "vanderwaals";
  }
  return "?";
}

inline std::optional<SorptionVariant> parse_sorption_variant(std::string_view s) {
  for (auto v : kAllSorptionVariants)
    if (to_string(v) == s) return v;
  return std::nullopt;
}

struct SorptionParams {
  SorptionVariant variant = SorptionVariant::Henry;
  std::vector<double> k_ad;   // adsorption coefficients, >= 0
  std::vector<double> k_de;   // desorption coefficients, >= 0
  std::vector<double> sigma;  // site weights, > 0 (>= 1 for Frumkin)
  double c_s_sigma = 1.0;     // surface site capacity, amount/area
  double beta = 1.0;          // interaction constant (Volmer, Frumkin, Van der Waals)
};

/// Net sorption rate s_i = adsorption - desorption between the bulk trace c_i
/// and the surface concentration c_i^S. Every variant factors as
///
///     s_i = k_ad_i * c_i * g_i(theta) - k_de_i * c_i^S,
///
/// with theta the weighted surface occupancy, so the adsorption factor g_i is
/// exposed separately for the stepper.
class SorptionModel {
 public:
  explicit SorptionModel(SorptionParams p) : p_(std::move(p)) {
    const std::size_t n = p_.k_ad.size();
    if (n == 0) throw usage_error("sorption model: no species");
    if (p_.k_de.size() != n || p_.sigma.size() != n)
      throw usage_error("sorption model: k_ad, k_de and sigma must have equal length");
    for (std::size_t i = 0; i < n; ++i) {
      if (!(p_.k_ad[i] >= 0.0))
        throw usage_error("sorption model: k_ad[" + std::to_string(i) +
                          "] must be >= 0 (adsorption bounded above by k_ad)");
      if (!(p_.k_de[i] >= 0.0))
        throw usage_error("sorption model: k_de[" + std::to_string(i) +
                          "] must be >= 0 (desorption bounded below by -k_de)");
      if (!(p_.sigma[i] > 0.0))
        throw usage_error("sorption model: sigma[" + std::to_string(i) + "] must be > 0");
      if (p_.variant == SorptionVariant::Frumkin && !(p_.sigma[i] >= 1.0))
        throw usage_error("sorption model: Frumkin requires sigma[" + std::to_string(i) +
                          "] >= 1");
    }
    if (!(p_.c_s_sigma > 0.0)) throw usage_error("sorption model: c_s_sigma must be > 0");
    if (uses_beta() && !(p_.beta > 0.0))
      throw usage_error("sorption model: beta must be > 0 for " +
                        std::string(to_string(p_.variant)));
  }

  SorptionVariant variant() const { return p_.variant; }
  const SorptionParams& params() const { return p_; }
  std::size_t size() const { return p_.k_ad.size(); }
  double k_ad(std::size_t i) const { return p_.k_ad[i]; }
  double k_de(std::size_t i) const { return p_.k_de[i]; }

  bool uses_beta() const {
    return p_.variant == SorptionVariant::Volmer || p_.variant == SorptionVariant::Frumkin ||
           p_.variant == SorptionVariant::VanDerWaals;
  }

  // Variants whose adsorption switches off at full occupancy.
  bool has_capacity() const {
    return p_.variant == SorptionVariant::Langmuir || p_.variant == SorptionVariant::Volmer ||
           p_.variant == SorptionVariant::VanDerWaals;
  }

  // Unchecked occupancy; callers guarantee c_surf >= 0.
  double occupancy(std::span<const double> c_surf) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < c_surf.size(); ++j) sum += p_.sigma[j] * c_surf[j];
    return sum / p_.c_s_sigma;
  }

  // g_i(theta) >= 0. For theta >= 1 the Volmer and Van der Waals factors take
  // their theta -> 1- limit, which is 0.
  double adsorption_factor(std::size_t i, double theta) const {
    const double beta = p_.beta;
    const double sigma = p_.sigma[i];
    switch (p_.variant) {
      case SorptionVariant::Henry:
        return 1.0;
      case SorptionVariant::Langmuir:
        return theta < 1.0 ? 1.0 - theta : 0.0;
      case SorptionVariant::Volmer:
        return theta < 1.0 ? (1.0 - theta) * std::exp(-beta * theta / (1.0 - theta)) : 0.0;
      case SorptionVariant::Frumkin:
        return std::pow(theta, sigma) * std::exp(-sigma * beta * theta);
      case SorptionVariant::VanDerWaals:
        return theta < 1.0
                   ? std::exp(-beta * theta) * std::exp(-sigma * theta / (1.0 - theta))
                   : 0.0;
    }
    return 0.0;
  }

  double rate(std::size_t i, double c_trace, double c_surf_i, double theta) const {
    return p_.k_ad[i] * c_trace * adsorption_factor(i, theta) - p_.k_de[i] * c_surf_i;
  }

 private:
  SorptionParams p_;
};

namespace detail {
inline void require_nonnegative(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] >= 0.0))
      throw domain_error(std::string(what) + "[" + std::to_string(i) + "] is negative");
}
}  // namespace detail

/// Weighted occupancy theta = sum_j sigma_j c_j^S / c_S.
inline double eval_occupancy(const SorptionModel& model, std::span<const double> c_surf) {
  if (c_surf.size() != model.size()) throw usage_error("eval_occupancy: length mismatch");
  detail::require_nonnegative(c_surf, "c_surf");
  return model.occupancy(c_surf);
}

inline std::vector<double> eval_sorption(const SorptionModel& model,
                                         std::span<const double> c_trace,
                                         std::span<const double> c_surf) {
  if (c_trace.size() != model.size() || c_surf.size() != model.size())
    throw usage_error("eval_sorption: length mismatch");
  detail::require_nonnegative(c_trace, "c_trace");
  detail::require_nonnegative(c_surf, "c_surf");
  const double theta = model.occupancy(c_surf);
  std::vector<double> s(model.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = model.rate(i, c_trace[i], c_surf[i], theta);
  return s;
}

}  // namespace bulksurf
