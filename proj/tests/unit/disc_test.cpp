#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <gtest/gtest.h>

#include "bulksurf/disc/coupling.hpp"
#include "bulksurf/disc/grid.hpp"
#include "bulksurf/disc/operators.hpp"
#include "bulksurf/disc/snapshot.hpp"
#include "bulksurf/disc/velocity.hpp"
#include "bulksurf/stepper/problem.hpp"

namespace bulksurf {
namespace {

Eigen::VectorXd random_field(std::size_t n, unsigned seed) {
  boost::random::mt19937 rng(seed);
  boost::random::uniform_real_distribution<double> u(0.0, 2.0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = u(rng);
  return v;
}

TEST(Grid, OneDimensional) {
  const Grid g = build_grid(1, {4, 1});
  EXPECT_EQ(g.cells(), 4u);
  EXPECT_DOUBLE_EQ(g.cell_volume(), 0.25);
  ASSERT_EQ(g.surface_cells(), 2u);
  for (const auto& f : g.faces()) EXPECT_EQ(f.area, 1.0);
  EXPECT_EQ(g.faces()[0].cell, 0u);
  EXPECT_EQ(g.faces()[1].cell, 3u);
}

TEST(Grid, TwoDimensionalChain) {
  const Grid g = build_grid(2, {3, 3});
  EXPECT_EQ(g.cells(), 9u);
  ASSERT_EQ(g.surface_cells(), 12u);
  // consecutive face centres are adjacent along the perimeter, including the wrap
  const auto& faces = g.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& a = faces[f];
    const auto& b = faces[(f + 1) % faces.size()];
    const double gap = std::abs(a.x - b.x) + std::abs(a.y - b.y);
    EXPECT_LE(gap, 1.0 / 3.0 + 1e-12) << "faces " << f << " and " << (f + 1) % faces.size();
  }
  std::set<std::pair<std::size_t, int>> seen;
  for (const auto& f : faces) seen.insert({f.cell, static_cast<int>(f.normal)});
  EXPECT_EQ(seen.size(), faces.size());
  EXPECT_EQ(g.faces_of_cell(g.index(0, 0)).size(), 2u);
  EXPECT_EQ(g.faces_of_cell(g.index(1, 1)).size(), 0u);
}

TEST(Grid, PerimeterSumsToFour) {
  for (std::size_t n : {2, 5, 17}) {
    const Grid g = build_grid(2, {n, n + 3});
    double sum = 0.0;
    for (const auto& f : g.faces()) sum += f.area;
    EXPECT_NEAR(sum, 4.0, 1e-13);
  }
}

TEST(Grid, RejectsTooFewCells) {
  EXPECT_THROW(build_grid(1, {1, 1}), usage_error);
  EXPECT_THROW(build_grid(2, {4, 1}), usage_error);
  EXPECT_THROW(build_grid(3, {4, 4}), usage_error);
}

// Largest |row sum| relative to the largest entry. Duplicate diagonal
// triplets are summed in floating point, so 2D rows cancel only to rounding.
double relative_row_residue(const SparseOperator& op) {
  double worst = 0.0;
  for (double s : row_sums(op)) worst = std::max(worst, std::abs(s));
  return worst / op.coeffs().cwiseAbs().maxCoeff();
}

TEST(BulkDiffusion, ZeroRowSumsAndConstants) {
  const auto L1 = assemble_bulk_diffusion(build_grid(1, {7, 1}), 0.7);
  for (double s : row_sums(L1)) EXPECT_EQ(s, 0.0);
  EXPECT_EQ((L1 * Eigen::VectorXd::Ones(7)).cwiseAbs().maxCoeff(), 0.0);

  for (const Grid& g : {build_grid(1, {7, 1}), build_grid(2, {5, 5}), build_grid(2, {5, 4}, {1.0, 2.0}),
                        build_grid(2, {7, 3}, {0.3, 1.7})}) {
    const auto L = assemble_bulk_diffusion(g, 0.7);
    EXPECT_LE(relative_row_residue(L), 4.0 * std::numeric_limits<double>::epsilon());
    const Eigen::VectorXd c = random_field(g.cells(), 3);
    EXPECT_NEAR(g.cell_volume() * (L * c).sum(), 0.0, 1e-12);
  }
}

TEST(BulkDiffusion, OneDimensionalStencil) {
  const Grid g = build_grid(1, {3, 1});
  const Eigen::MatrixXd L = Eigen::MatrixXd(assemble_bulk_diffusion(g, 1.0));
  const double h2 = 1.0 / 9.0;
  EXPECT_NEAR(L(1, 0) * h2, 1.0, 1e-12);
  EXPECT_NEAR(L(1, 1) * h2, -2.0, 1e-12);
  EXPECT_NEAR(L(1, 2) * h2, 1.0, 1e-12);
  EXPECT_NEAR(L(0, 0) * h2, -1.0, 1e-12);  // Neumann boundary row
}

TEST(SurfaceDiffusion, OneDimensionalIsZero) {
  const auto S = assemble_surface_diffusion(build_grid(1, {8, 1}), 1.0);
  EXPECT_EQ(S.rows(), 2);
  EXPECT_EQ(S.nonZeros(), 0);
}

TEST(SurfaceDiffusion, PeriodicStencil) {
  const Grid g = build_grid(2, {4, 4});
  const Eigen::MatrixXd S = Eigen::MatrixXd(assemble_surface_diffusion(g, 2.0));
  const double h = 0.25;
  const Eigen::Index n = S.rows();
  ASSERT_EQ(n, 16);
  for (Eigen::Index f = 0; f < n; ++f) {
    EXPECT_NEAR(S(f, f) * h * h / 2.0, -2.0, 1e-12);
    EXPECT_NEAR(S(f, (f + 1) % n) * h * h / 2.0, 1.0, 1e-12);
    EXPECT_NEAR(S(f, (f + n - 1) % n) * h * h / 2.0, 1.0, 1e-12);
  }
  EXPECT_LE(relative_row_residue(assemble_surface_diffusion(g, 2.0)),
            4.0 * std::numeric_limits<double>::epsilon());
  const Grid skew = build_grid(2, {5, 3}, {0.7, 1.9});
  EXPECT_LE(relative_row_residue(assemble_surface_diffusion(skew, 0.3)),
            4.0 * std::numeric_limits<double>::epsilon());
}

TEST(Advection, ZeroVelocityIsZero) {
  EXPECT_EQ(assemble_advection(build_grid(2, {6, 6}), VelocityField::zero()).nonZeros(), 0);
}

TEST(Advection, StreamFunctionDivergenceFree) {
  const Grid g = build_grid(2, {8, 8});
  const auto fluxes = face_fluxes(g, VelocityField::stream(1.0));
  for (double out : net_outflow(g, fluxes)) EXPECT_EQ(out, 0.0);
  // boundary fluxes vanish
  for (std::size_t j = 0; j < 8; ++j) {
    EXPECT_EQ(fluxes.fx[0 + 9 * j], 0.0);
    EXPECT_EQ(fluxes.fx[8 + 9 * j], 0.0);
  }
  const auto A = assemble_advection(g, VelocityField::stream(1.0));
  EXPECT_GT(A.nonZeros(), 0);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(64);
  EXPECT_LE((A * ones).cwiseAbs().maxCoeff(),
            4.0 * std::numeric_limits<double>::epsilon() * A.coeffs().cwiseAbs().maxCoeff());
  const Eigen::VectorXd c = random_field(64, 5);
  EXPECT_NEAR(g.cell_volume() * (A * c).sum(), 0.0, 1e-14);
}

TEST(Advection, StreamOnOneDimensionalGridRejected) {
  EXPECT_THROW(assemble_advection(build_grid(1, {8, 1}), VelocityField::stream(1.0)), usage_error);
}

TEST(Coupling, HenryEquilibriumIsSilent) {
  const Grid g = build_grid(2, {4, 4});
  const SorptionModel m({SorptionVariant::Henry, {1.0}, {1.0}, {1.0}});
  State s = State::zeros(1, g);
  s.c.setConstant(0.7);
  s.c_surf.setConstant(0.7);
  const auto src = apply_coupling(g, m, s);
  EXPECT_EQ(src.bulk.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(src.surface.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Coupling, SingleFaceExample) {
  // 1D, 4 cells: V = 0.25, unit face area; only the left face is active.
  const Grid g = build_grid(1, {4, 1});
  const SorptionModel m({SorptionVariant::Henry, {1.0}, {1.0}, {1.0}});
  State s = State::zeros(1, g);
  s.c(0, 0) = 2.0;
  s.c_surf(0, 0) = 0.5;
  const auto src = apply_coupling(g, m, s);
  EXPECT_DOUBLE_EQ(src.bulk(0, 0), -6.0);
  EXPECT_DOUBLE_EQ(src.surface(0, 0), 1.5);
  EXPECT_EQ(src.bulk(0, 3), 0.0);
  EXPECT_EQ(src.surface(0, 1), 0.0);
}

TEST(Coupling, ExchangeIsAntisymmetric) {
  const Grid g = build_grid(2, {5, 3});
  const SorptionModel m({SorptionVariant::Langmuir, {1.0, 2.0}, {0.3, 0.8}, {1.0, 2.0}});
  State s = State::zeros(2, g);
  s.c.row(0) = random_field(g.cells(), 1).transpose();
  s.c.row(1) = random_field(g.cells(), 2).transpose();
  s.c_surf.row(0) = 0.2 * random_field(g.surface_cells(), 3).transpose();
  s.c_surf.row(1) = 0.1 * random_field(g.surface_cells(), 4).transpose();
  const auto src = apply_coupling(g, m, s);
  for (Eigen::Index i = 0; i < 2; ++i) {
    double surf = 0.0;
    for (std::size_t f = 0; f < g.surface_cells(); ++f)
      surf += g.faces()[f].area * src.surface(i, static_cast<Eigen::Index>(f));
    const double bulk = g.cell_volume() * src.bulk.row(i).sum();
    EXPECT_NEAR(surf + bulk, 0.0, 1e-14);
  }
}

TEST(Coupling, RejectsNegativeState) {
  const Grid g = build_grid(1, {4, 1});
  const SorptionModel m({SorptionVariant::Henry, {1.0}, {1.0}, {1.0}});
  State s = State::zeros(1, g);
  s.c(0, 2) = -1e-3;
  EXPECT_THROW(apply_coupling(g, m, s), domain_error);
}

TEST(SemiDiscrete, ConservesMassWithoutReactions) {
  const Grid g = build_grid(2, {6, 5});
  const Problem pb(g, SpeciesSystem({"A", "B"}, {1.0, 0.3}, {0.5, 2.0}),
                   SorptionModel({SorptionVariant::Volmer, {1.0, 2.0}, {0.3, 0.8}, {1.0, 2.0}}),
                   ReactionNetwork(2), ReactionNetwork(2), VelocityField::stream(0.8));
  for (unsigned seed = 0; seed < 5; ++seed) {
    State s = State::zeros(2, g);
    s.c.row(0) = random_field(g.cells(), 10 + seed).transpose();
    s.c.row(1) = random_field(g.cells(), 20 + seed).transpose();
    s.c_surf.row(0) = 0.2 * random_field(g.surface_cells(), 30 + seed).transpose();
    s.c_surf.row(1) = 0.2 * random_field(g.surface_cells(), 40 + seed).transpose();
    const auto [dc, dcs] = semi_discrete_rhs(pb, s);
    for (Eigen::Index i = 0; i < 2; ++i) {
      double total = g.cell_volume() * dc.row(i).sum();
      for (std::size_t f = 0; f < g.surface_cells(); ++f)
        total += g.faces()[f].area * dcs(i, static_cast<Eigen::Index>(f));
      EXPECT_NEAR(total, 0.0, 1e-12);
    }
  }
}

TEST(Snapshot, Format) {
  const Grid g = build_grid(2, {2, 2});
  State s = State::zeros(1, g);
  s.t = 0.5;
  s.c(0, 3) = 1.25;
  std::ostringstream os;
  write_snapshot(os, g, s, 0, "A", Field::Bulk);
  const std::string text = os.str();
  EXPECT_NE(text.find("# t=0.5\n"), std::string::npos);
  EXPECT_NE(text.find("# species=A\n"), std::string::npos);
  EXPECT_NE(text.find("3 0.75 0.75 1.25\n"), std::string::npos);
}

TEST(Format, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_g17(v)), v);
}

}  // namespace
}  // namespace bulksurf
