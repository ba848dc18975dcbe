#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "bulksurf/disc/snapshot.hpp"
#include "bulksurf/model/checks.hpp"
#include "bulksurf/stepper/run.hpp"

namespace bulksurf {

/// A complete, self-describing simulation setup.
struct Scenario {
  std::string id;
  Grid grid;
  SpeciesSystem system;
  SorptionModel model;
  ReactionNetwork bulk;
  ReactionNetwork surface;
  VelocityField velocity;
  State initial;
  double t_end = 1.0;
  StepperConfig stepper;
  std::optional<TriangularStructure> tri_bulk;
  std::optional<TriangularStructure> tri_surface;
  bool expects_blowup = false;  // growth hypotheses knowingly violated

  Problem problem() const { return Problem(grid, system, model, bulk, surface, velocity); }
};

namespace detail {

inline void describe_network(std::ostream& os, const char* tag, const ReactionNetwork& net) {
  os << tag << ' ' << net.reactions() << '\n';
  for (std::size_t r = 0; r < net.reactions(); ++r) {
    for (std::size_t i = 0; i < net.species(); ++i)
      os << net.stoich(i, r) << ':' << net.order(i, r) << ' ';
    os << format_g17(net.rate_constant(r)) << '\n';
  }
}

inline void describe_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) os << format_g17(m(i, k)) << ' ';
  os << '\n';
}

inline void describe_tri(std::ostream& os, const std::optional<TriangularStructure>& t) {
  if (!t) {
    os << "none\n";
    return;
  }
  for (const auto& row : t->Q)
    for (double q : row) os << format_g17(q) << ' ';
  os << format_g17(t->c_tr) << ' ' << format_g17(t->mu) << '\n';
}

}  // namespace detail

/// Canonical text form of every input that influences a run.
inline std::string describe(const Scenario& s) {
  std::ostringstream os;
  os << "id " << s.id << '\n';
  const auto& g = s.grid;
  os << "grid " << g.dim() << ' ' << g.nx() << ' ' << g.ny() << ' ' << format_g17(g.lx()) << ' '
     << format_g17(g.ly()) << '\n';
  for (std::size_t i = 0; i < s.system.size(); ++i)
    os << "species " << s.system.names()[i] << ' ' << format_g17(s.system.d_bulk(i)) << ' '
       << format_g17(s.system.d_surf(i)) << '\n';
  const auto& p = s.model.params();
  os << "sorption " << to_string(p.variant) << ' ' << format_g17(p.c_s_sigma) << ' '
     << format_g17(p.beta) << '\n';
  for (std::size_t i = 0; i < p.k_ad.size(); ++i)
    os << format_g17(p.k_ad[i]) << ' ' << format_g17(p.k_de[i]) << ' ' << format_g17(p.sigma[i])
       << '\n';
  detail::describe_network(os, "bulk", s.bulk);
  detail::describe_network(os, "surface", s.surface);
  os << "velocity " << static_cast<int>(s.velocity.kind) << ' '
     << format_g17(s.velocity.amplitude) << '\n';
  detail::describe_matrix(os, s.initial.c);
  detail::describe_matrix(os, s.initial.c_surf);
  const auto& c = s.stepper;
  os << "stepper " << format_g17(s.t_end) << ' ' << format_g17(c.dt_init) << ' '
     << format_g17(c.dt_min) << ' ' << format_g17(c.dt_max) << ' ' << format_g17(c.cfl) << ' '
     << format_g17(c.lin_tol) << ' ' << c.max_lin_iter << ' ' << format_g17(c.blowup_threshold)
     << ' ' << format_g17(c.positivity_tol) << ' ' << format_g17(c.output_every) << ' '
     << format_g17(c.max_rel_change) << ' ' << format_g17(c.change_floor) << ' '
     << c.grow_after << '\n';
  detail::describe_tri(os, s.tri_bulk);
  detail::describe_tri(os, s.tri_surface);
  return os.str();
}

/// 64-bit FNV-1a of describe(s), as 16 hex digits.
inline std::string fingerprint(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : describe(s)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// base + amplitude * cos(pi x / lx) [* cos(pi y / ly)] at cell centres.
inline Eigen::RowVectorXd cosine_profile(const Grid& g, double base, double amplitude) {
  Eigen::RowVectorXd v(static_cast<Eigen::Index>(g.cells()));
  for (std::size_t k = 0; k < g.cells(); ++k) {
    const auto xy = g.cell_center(k);
    double w = std::cos(std::numbers::pi * xy[0] / g.lx());
    if (g.dim() == 2) w *= std::cos(std::numbers::pi * xy[1] / g.ly());
    v(static_cast<Eigen::Index>(k)) = base + amplitude * w;
  }
  return v;
}

/// Random mass-action network on n species whose reactions never increase
/// the molecule count, so solutions stay bounded. Quasi-positive by
/// construction like every mass-action network.
inline ReactionNetwork random_network(std::size_t n, std::size_t n_reactions,
                                      std::uint64_t seed) {
  boost::random::mt19937 rng(static_cast<std::uint32_t>(seed));
  boost::random::uniform_int_distribution<int> order(1, 2);
  boost::random::uniform_int_distribution<std::size_t> pick(0, n - 1);
  boost::random::uniform_real_distribution<double> rate(0.5, 2.0);
  ReactionNetwork net(n);
  while (net.reactions() < n_reactions) {
    Reaction rx{std::vector<int>(n, 0), std::vector<int>(n, 0), rate(rng)};
    const int o = order(rng);
    for (int m = 0; m < o; ++m) ++rx.reactants[pick(rng)];
    boost::random::uniform_int_distribution<int> n_prod(0, o);
    const int q = n_prod(rng);
    for (int m = 0; m < q; ++m) ++rx.products[pick(rng)];
    if (rx.reactants == rx.products) continue;
    net.add(rx);
  }
  return net;
}

inline std::vector<double> filled(std::size_t n, double v) { return std::vector<double>(n, v); }

/// The paper's blow-up example: one species, s = c - c^S, r = c^2 in the bulk
/// and on the surface, unit data; exact solution 1/(1-t) in both phases.
inline Scenario henry_blowup_scenario() {
  Grid g = build_grid(1, {8, 1});
  ReactionNetwork r(1);
  r.add({{2}, {3}, 1.0});
  State init = State::zeros(1, g);
  init.c.setOnes();
  init.c_surf.setOnes();
  Scenario s{"henry_blowup",
             g,
             SpeciesSystem({"A"}, {1.0}, {1.0}),
             SorptionModel({SorptionVariant::Henry, {1.0}, {1.0}, {1.0}}),
             r,
             r,
             VelocityField::zero(),
             init,
             2.0,
             {},
             TriangularStructure{{{1.0}}, 1.0, 2.0},
             TriangularStructure{{{1.0}}, 1.0, 2.0},
             true};
  s.stepper.output_every = 0.05;
  return s;
}

inline SorptionModel matrix_sorption(SorptionVariant v) {
  return SorptionModel({v, {1.0, 0.5, 2.0}, {0.5, 1.0, 0.2}, {1.0, 1.0, 1.5}, 1.0, 1.0});
}

inline std::string dim_tag(int dim) { return dim == 1 ? "1d" : "2d"; }

inline std::string velocity_tag(const VelocityField& v) {
  return v.kind == VelocityField::Kind::Zero ? "zero" : "stream";
}

// Grid and velocity combinations of the scenario matrix. A divergence-free
// field with no normal flux on an interval vanishes, so 1D only pairs with
// the zero field.
inline std::vector<std::pair<Grid, VelocityField>> matrix_layouts() {
  return {{build_grid(1, {32, 1}), VelocityField::zero()},
          {build_grid(2, {16, 16}), VelocityField::zero()},
          {build_grid(2, {16, 16}), VelocityField::stream(1.0)}};
}

inline Scenario matrix_scenario(const std::string& family, SorptionVariant v, Grid g,
                                VelocityField vel, bool with_reactions, double t_end,
                                std::uint64_t seed) {
  const std::size_t n = 3;
  State init = State::zeros(n, g);
  init.c.row(0) = cosine_profile(g, 1.0, 0.8);
  init.c.row(1) = cosine_profile(g, 0.5, 0.5);  // touches zero at the corners
  init.c.row(2).setConstant(0.25);
  init.c_surf.row(0).setConstant(0.1);
  init.c_surf.row(2).setConstant(0.2);
  std::string id = family + "/" + std::string(to_string(v)) + "/" + dim_tag(g.dim()) + "/" +
                   velocity_tag(vel);
  ReactionNetwork bulk = with_reactions ? random_network(n, 3, seed) : ReactionNetwork(n);
  ReactionNetwork surf = with_reactions ? random_network(n, 2, seed + 1) : ReactionNetwork(n);
  return Scenario{id,
                  std::move(g),
                  SpeciesSystem({"A", "B", "C"}, {1.0, 0.5, 0.2}, {0.5, 0.1, 1.0}),
                  matrix_sorption(v),
                  std::move(bulk),
                  std::move(surf),
                  vel,
                  std::move(init),
                  t_end,
                  {},
                  std::nullopt,
                  std::nullopt,
                  false};
}

inline std::vector<Scenario> positivity_scenarios() {
  std::vector<Scenario> out;
  std::uint64_t seed = 1000;
  for (auto v : kAllSorptionVariants)
    for (auto& [g, vel] : matrix_layouts()) out.push_back(matrix_scenario("positivity", v, g, vel, true, 1.0, seed += 2));
  return out;
}

inline std::vector<Scenario> mass_balance_scenarios() {
  std::vector<Scenario> out;
  for (auto v : kAllSorptionVariants)
    for (auto& [g, vel] : matrix_layouts())
      out.push_back(matrix_scenario("mass_balance", v, g, vel, false, 2.0, 0));
  return out;
}

/// Single species Langmuir on a 1D grid with uniform initial data.
inline Scenario langmuir_cap_scenario(const std::string& tag, double theta0, double c0,
                                      double k_ad, double k_de) {
  Grid g = build_grid(1, {32, 1});
  State init = State::zeros(1, g);
  init.c.setConstant(c0);
  init.c_surf.setConstant(theta0);
  init.c.row(0) += cosine_profile(g, 0.0, 0.5 * c0);
  return Scenario{"langmuir_cap/" + tag,
                  g,
                  SpeciesSystem({"A"}, {1.0}, {1.0}),
                  SorptionModel({SorptionVariant::Langmuir, {k_ad}, {k_de}, {1.0}, 1.0, 1.0}),
                  ReactionNetwork(1),
                  ReactionNetwork(1),
                  VelocityField::zero(),
                  init,
                  5.0,
                  {},
                  std::nullopt,
                  std::nullopt,
                  false};
}

inline std::vector<Scenario> langmuir_cap_scenarios() {
  return {langmuir_cap_scenario("theta0_0", 0.0, 2.0, 20.0, 0.0),
          langmuir_cap_scenario("theta0_1.5", 1.5, 1.0, 3.0, 1.0),
          langmuir_cap_scenario("zero_sorption", 0.0, 1.0, 0.0, 0.0)};
}

inline std::vector<Scenario> comparison_scenarios() {
  std::vector<Scenario> out;
  {
    Grid g = build_grid(1, {32, 1});
    ReactionNetwork bulk(2);
    bulk.add({{1, 0}, {0, 1}, 1.0});
    State init = State::zeros(2, g);
    init.c.row(0) = cosine_profile(g, 1.0, 0.9);
    init.c.row(1).setConstant(0.5);
    init.c_surf.row(0).setConstant(0.3);
    out.push_back({"comparison/henry_linear", g,
                   SpeciesSystem({"A", "B"}, {1.0, 0.5}, {1.0, 1.0}),
                   SorptionModel({SorptionVariant::Henry, {1.0, 2.0}, {0.5, 1.0}, {1.0, 1.0}}),
                   bulk, ReactionNetwork(2), VelocityField::zero(), init, 1.0, {},
                   TriangularStructure{{{1.0, 0.0}, {1.0, 1.0}}, 1.0, 0.0}, std::nullopt, false});
  }
  {
    Grid g = build_grid(2, {16, 16});
    ReactionNetwork bulk(2);
    bulk.add({{2, 0}, {0, 1}, 1.0});
    State init = State::zeros(2, g);
    init.c.row(0) = cosine_profile(g, 1.0, 0.9);
    init.c.row(1).setConstant(0.2);
    init.c_surf.row(1).setConstant(0.4);
    out.push_back({"comparison/langmuir_triangular", g,
                   SpeciesSystem({"A", "B"}, {1.0, 0.5}, {0.5, 0.5}),
                   SorptionModel({SorptionVariant::Langmuir, {2.0, 1.0}, {0.5, 0.5}, {1.0, 1.0},
                                  1.0, 1.0}),
                   bulk, ReactionNetwork(2), VelocityField::stream(0.5), init, 1.0, {},
                   TriangularStructure{{{1.0, 0.0}, {1.0, 2.0}}, 1.0, 0.0}, std::nullopt, false});
  }
  {
    Grid g = build_grid(1, {16, 1});
    State init = State::zeros(1, g);
    init.c.row(0) = cosine_profile(g, 1.0, 0.5);
    init.c_surf.setConstant(0.7);
    out.push_back({"comparison/zero_dynamics", g, SpeciesSystem({"A"}, {1.0}, {1.0}),
                   SorptionModel({SorptionVariant::Henry, {0.0}, {0.0}, {1.0}}), ReactionNetwork(1),
                   ReactionNetwork(1), VelocityField::zero(), init, 0.5, {}, std::nullopt,
                   std::nullopt, false});
  }
  return out;
}

/// Pure Neumann heat equation on [0,1] from 1 + a cos(pi x); surface inert.
/// dt = h^2 / 10 keeps the first-order time error below the spatial one.
inline Scenario heat_scenario(std::size_t cells, double d = 1.0, double t_end = 0.1,
                              double dt_factor = 0.1, double amplitude = 1.0) {
  Grid g = build_grid(1, {cells, 1});
  State init = State::zeros(1, g);
  init.c.row(0) = cosine_profile(g, 1.0, amplitude);
  const double h = 1.0 / static_cast<double>(cells);
  Scenario s{"heat/" + std::to_string(cells), g, SpeciesSystem({"u"}, {d}, {1.0}),
             SorptionModel({SorptionVariant::Henry, {0.0}, {0.0}, {1.0}}), ReactionNetwork(1),
             ReactionNetwork(1), VelocityField::zero(), init, t_end, {}, std::nullopt,
             std::nullopt, false};
  s.stepper.dt_init = s.stepper.dt_max = dt_factor * h * h;
  s.stepper.dt_min = std::min(1e-12, s.stepper.dt_init);
  s.stepper.output_every = t_end;
  return s;
}

inline std::vector<Scenario> norm_envelope_scenarios() {
  std::vector<Scenario> out;
  {
    Grid g = build_grid(1, {32, 1});
    ReactionNetwork bulk(2);
    bulk.add({{1, 0}, {2, 0}, 0.5});
    bulk.add({{1, 0}, {0, 1}, 0.25});
    State init = State::zeros(2, g);
    init.c.row(0).setConstant(1.0);
    init.c.row(1).setConstant(0.2);
    init.c_surf.setConstant(0.5);
    out.push_back({"norm_envelope/henry_linear", g,
                   SpeciesSystem({"A", "B"}, {1.0, 1.0}, {1.0, 1.0}),
                   SorptionModel({SorptionVariant::Henry, {1.0, 1.0}, {1.0, 0.5}, {1.0, 1.0}}),
                   bulk, ReactionNetwork(2), VelocityField::zero(), init, 2.0, {},
                   TriangularStructure{{{1.0, 0.0}, {1.0, 1.0}}, 1.0, 1.0},
                   TriangularStructure{{{1.0, 0.0}, {0.0, 1.0}}, 1.0, 0.0}, false});
  }
  {
    Scenario s = henry_blowup_scenario();
    s.id = "norm_envelope/henry_blowup_truncated";
    s.t_end = 0.9;
    out.push_back(std::move(s));
  }
  return out;
}

/// Every built-in scenario, in a fixed order.
inline std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> all{henry_blowup_scenario()};
  for (auto* family : {&positivity_scenarios, &mass_balance_scenarios, &langmuir_cap_scenarios,
                       &comparison_scenarios, &norm_envelope_scenarios})
    for (auto& s : (*family)()) all.push_back(std::move(s));
  for (std::size_t n : {16, 32, 64}) all.push_back(heat_scenario(n));
  return all;
}

}  // namespace bulksurf
