#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bulksurf/errors.hpp"

namespace bulksurf {

/// One mass-action reaction written as reactant and product multiplicities
/// per species, e.g. A + 2 B -> C is reactants (1,2,0), products (0,0,1).
struct Reaction {
  std::vector<int> reactants;
  std::vector<int> products;
  double k = 1.0;
};

/// Mass-action network: r_i(c) = sum_r nu_ir k_r prod_j c_j^alpha_jr.
///
/// Invariant: nu_ir < 0 implies alpha_ir >= 1, so every loss term of species i
/// carries a factor c_i and the rates are quasi-positive on the orthant.
class ReactionNetwork {
 public:
  explicit ReactionNetwork(std::size_t n_species) : n_(n_species) {
    if (n_ == 0) throw usage_error("reaction network: no species");
  }

  // stoich and orders are n_species rows of n_reactions entries.
  ReactionNetwork(std::size_t n_species, const std::vector<std::vector<int>>& stoich,
                  const std::vector<std::vector<int>>& orders, std::vector<double> rates)
      : ReactionNetwork(n_species) {
    if (stoich.size() != n_ || orders.size() != n_)
      throw usage_error("reaction network: stoich/orders need one row per species");
    for (std::size_t r = 0; r < rates.size(); ++r) {
      std::vector<int> nu(n_), alpha(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        if (stoich[i].size() != rates.size() || orders[i].size() != rates.size())
          throw usage_error("reaction network: stoich/orders need one column per reaction");
        nu[i] = stoich[i][r];
        alpha[i] = orders[i][r];
      }
      push(std::move(nu), std::move(alpha), rates[r]);
    }
  }

  void add(const Reaction& rx) {
    if (rx.reactants.size() != n_ || rx.products.size() != n_)
      throw usage_error("reaction network: reaction has wrong species count");
    std::vector<int> nu(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (rx.reactants[i] < 0 || rx.products[i] < 0)
        throw usage_error("reaction network: negative multiplicity");
      nu[i] = rx.products[i] - rx.reactants[i];
    }
    push(std::move(nu), rx.reactants, rx.k);
  }

  std::size_t species() const { return n_; }
  std::size_t reactions() const { return k_.size(); }
  bool empty() const { return k_.empty(); }
  int stoich(std::size_t i, std::size_t r) const { return nu_[r][i]; }
  int order(std::size_t i, std::size_t r) const { return alpha_[r][i]; }
  double rate_constant(std::size_t r) const { return k_[r]; }

  double reaction_rate(std::size_t r, std::span<const double> c) const {
    double w = k_[r];
    for (std::size_t j = 0; j < n_; ++j)
      if (alpha_[r][j] > 0) w *= ipow(c[j], alpha_[r][j]);
    return w;
  }

  // Unchecked evaluation into out (length n_species).
  void rates(std::span<const double> c, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t r = 0; r < k_.size(); ++r) {
      const double w = reaction_rate(r, c);
      for (std::size_t i = 0; i < n_; ++i)
        if (nu_[r][i] != 0) out[i] += nu_[r][i] * w;
    }
  }

  // Splits r_i = P_i - delta_i * c_i with P_i, delta_i >= 0 on the orthant.
  // delta_i is formed with the own-species power lowered by one, never by
  // dividing through c_i.
  void production_destruction(std::span<const double> c, std::span<double> production,
                              std::span<double> destruction_rate) const {
    std::fill(production.begin(), production.end(), 0.0);
    std::fill(destruction_rate.begin(), destruction_rate.end(), 0.0);
    for (std::size_t r = 0; r < k_.size(); ++r) {
      bool have_w = false;
      double w = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const int nu = nu_[r][i];
        if (nu > 0) {
          if (!have_w) {
            w = reaction_rate(r, c);
            have_w = true;
          }
          production[i] += nu * w;
        } else if (nu < 0) {
          double d = k_[r];
          for (std::size_t j = 0; j < n_; ++j) {
            const int a = j == i ? alpha_[r][j] - 1 : alpha_[r][j];
            if (a > 0) d *= ipow(c[j], a);
          }
          destruction_rate[i] += -nu * d;
        }
      }
    }
  }

 private:
  static double ipow(double x, int e) {
    double y = 1.0;
    for (int k = 0; k < e; ++k) y *= x;
    return y;
  }

  void push(std::vector<int> nu, std::vector<int> alpha, double k) {
    if (!(k > 0.0) || !std::isfinite(k))
      throw usage_error("reaction network: rate constant must be finite and > 0");
    for (std::size_t i = 0; i < n_; ++i) {
      if (alpha[i] < 0) throw usage_error("reaction network: negative reaction order");
      if (nu[i] < 0 && alpha[i] < 1)
        throw usage_error("reaction network: species " + std::to_string(i) +
                          " is consumed by reaction " + std::to_string(k_.size()) +
                          " without appearing as reactant (breaks quasi-positivity)");
    }
    nu_.push_back(std::move(nu));
    alpha_.push_back(std::move(alpha));
    k_.push_back(k);
  }

  std::size_t n_;
  std::vector<std::vector<int>> nu_;     // per reaction
  std::vector<std::vector<int>> alpha_;  // per reaction
  std::vector<double> k_;
};

inline std::vector<double> eval_reactions(const ReactionNetwork& net, std::span<const double> c) {
  if (c.size() != net.species()) throw usage_error("eval_reactions: length mismatch");
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!(c[i] >= 0.0))
      throw domain_error("eval_reactions: c[" + std::to_string(i) + "] is negative");
  std::vector<double> r(c.size());
  net.rates(c, r);
  return r;
}

struct GrowthBound {
  int gamma = 1;   // max total reaction order, at least 1
  double M = 0.0;  // |r'(y)| <= M (1 + |y|^(gamma-1)) on the orthant
};

/// Polynomial growth exponent and a certified derivative constant.
///
/// Every entry of the Jacobian is a sum of monomials of degree m_r - 1 <=
/// gamma - 1 with coefficient |nu_ir| k_r alpha_jr, and |y^beta| <= |y|^|beta|
/// <= 1 + |y|^(gamma-1). Summing all coefficients bounds the Frobenius norm,
/// hence the operator norm.
inline GrowthBound growth_exponent(const ReactionNetwork& net) {
  GrowthBound g;
  for (std::size_t r = 0; r < net.reactions(); ++r) {
    int total_order = 0;
    int total_nu = 0;
    for (std::size_t i = 0; i < net.species(); ++i) {
      total_order += net.order(i, r);
      total_nu += std::abs(net.stoich(i, r));
    }
    g.gamma = std::max(g.gamma, total_order);
    g.M += net.rate_constant(r) * total_nu * total_order;
  }
  return g;
}

}  // namespace bulksurf
