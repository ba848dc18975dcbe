#include <cmath>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <gtest/gtest.h>

#include "bulksurf/model/checks.hpp"
#include "bulksurf/model/reactions.hpp"
#include "bulksurf/model/sorption.hpp"

namespace bulksurf {
namespace {

SorptionModel make_model(SorptionVariant v, std::vector<double> k_ad, std::vector<double> k_de,
                         std::vector<double> sigma, double c_s = 1.0, double beta = 1.0) {
  return SorptionModel({v, std::move(k_ad), std::move(k_de), std::move(sigma), c_s, beta});
}

// Independent closed forms of the five adsorption factors.
double oracle_factor(SorptionVariant v, double theta, double sigma, double beta) {
  switch (v) {
    case SorptionVariant::Henry: return 1.0;
    case SorptionVariant::Langmuir: return std::max(0.0, 1.0 - theta);
    case SorptionVariant::Volmer:
      return theta >= 1.0 ? 0.0 : (1.0 - theta) * std::exp(-beta * theta / (1.0 - theta));
    case SorptionVariant::Frumkin: return std::pow(theta, sigma) * std::exp(-sigma * beta * theta);
    case SorptionVariant::VanDerWaals:
      return theta >= 1.0 ? 0.0 : std::exp(-beta * theta) * std::exp(-sigma * theta / (1.0 - theta));
  }
  return 0.0;
}

TEST(Occupancy, WeightedSum) {
  auto m = make_model(SorptionVariant::Langmuir, {1, 1}, {1, 1}, {1, 2});
  EXPECT_DOUBLE_EQ(eval_occupancy(m, std::vector<double>{0.5, 0.25}), 1.0);
  EXPECT_EQ(eval_occupancy(m, std::vector<double>{0.0, 0.0}), 0.0);
}

TEST(Occupancy, ScaledByCapacity) {
  auto m = make_model(SorptionVariant::Langmuir, {1}, {1}, {1}, 0.6);
  EXPECT_NEAR(eval_occupancy(m, std::vector<double>{0.3}), 0.5, 1e-15);
}

TEST(Occupancy, RejectsNegativeInput) {
  auto m = make_model(SorptionVariant::Henry, {1}, {1}, {1});
  EXPECT_THROW(eval_occupancy(m, std::vector<double>{-0.1}), domain_error);
}

TEST(Sorption, HenryExamples) {
  auto m = make_model(SorptionVariant::Henry, {1}, {1}, {1});
  EXPECT_EQ(eval_sorption(m, std::vector<double>{1.0}, std::vector<double>{1.0})[0], 0.0);
  EXPECT_DOUBLE_EQ(eval_sorption(m, std::vector<double>{2.0}, std::vector<double>{0.5})[0], 1.5);
}

TEST(Sorption, LangmuirPositivePartCutoff) {
  auto m = make_model(SorptionVariant::Langmuir, {1}, {0}, {1});
  EXPECT_EQ(eval_sorption(m, std::vector<double>{1.0}, std::vector<double>{2.0})[0], 0.0);
}

TEST(Sorption, RejectsNegativeInput) {
  auto m = make_model(SorptionVariant::Henry, {1}, {1}, {1});
  EXPECT_THROW(eval_sorption(m, std::vector<double>{-1.0}, std::vector<double>{0.0}), domain_error);
  EXPECT_THROW(eval_sorption(m, std::vector<double>{0.0}, std::vector<double>{-1.0}), domain_error);
}

TEST(Sorption, RejectsBadParameters) {
  EXPECT_THROW(make_model(SorptionVariant::Henry, {-1}, {1}, {1}), usage_error);
  EXPECT_THROW(make_model(SorptionVariant::Henry, {1}, {-1}, {1}), usage_error);
  EXPECT_THROW(make_model(SorptionVariant::Henry, {1}, {1}, {0}), usage_error);
  EXPECT_THROW(make_model(SorptionVariant::Frumkin, {1}, {1}, {0.5}), usage_error);
  EXPECT_THROW(make_model(SorptionVariant::Volmer, {1}, {1}, {1}, 1.0, 0.0), usage_error);
  EXPECT_THROW(make_model(SorptionVariant::Henry, {1, 2}, {1}, {1}), usage_error);
}

TEST(Sorption, MatchesClosedFormsForAllVariants) {
  const double beta = 0.7;
  boost::random::mt19937 rng(7);
  boost::random::uniform_real_distribution<double> u(0.0, 1.5);
  for (auto v : kAllSorptionVariants) {
    auto m = make_model(v, {1.3, 0.4}, {0.6, 2.0}, {1.0, 2.0}, 1.2, beta);
    for (int k = 0; k < 200; ++k) {
      std::vector<double> c{u(rng), u(rng)}, cs{0.5 * u(rng), 0.3 * u(rng)};
      const double theta = (cs[0] + 2.0 * cs[1]) / 1.2;
      const auto s = eval_sorption(m, c, cs);
      const double e0 = 1.3 * c[0] * oracle_factor(v, theta, 1.0, beta) - 0.6 * cs[0];
      const double e1 = 0.4 * c[1] * oracle_factor(v, theta, 2.0, beta) - 2.0 * cs[1];
      EXPECT_NEAR(s[0], e0, 1e-13) << to_string(v);
      EXPECT_NEAR(s[1], e1, 1e-13) << to_string(v);
    }
  }
}

TEST(Sorption, ContinuousAcrossFullOccupancy) {
  for (auto v : kAllSorptionVariants) {
    auto m = make_model(v, {1.0}, {0.5}, {1.0}, 1.0, 1.0);
    const std::vector<double> c{1.0};
    const double at_one = eval_sorption(m, c, std::vector<double>{1.0})[0];
    for (double eps = 1e-2; eps >= 1e-6; eps /= 10.0) {
      const double below = eval_sorption(m, c, std::vector<double>{1.0 - eps})[0];
      const double above = eval_sorption(m, c, std::vector<double>{1.0 + eps})[0];
      // Every factor is at least Lipschitz-like near 1 except the exp(-x/(1-x))
      // tails, which decay faster than any power.
      const double bound = 2.0 * eps + (v == SorptionVariant::Frumkin ? 2.0 * eps : 0.0);
      EXPECT_LE(std::abs(below - at_one), bound + 1e-12) << to_string(v) << " eps=" << eps;
      EXPECT_LE(std::abs(above - at_one), bound + 1e-12) << to_string(v) << " eps=" << eps;
    }
  }
}

TEST(SorptionStructure, AdmissibleVariantsPass) {
  SamplingPlan plan;
  plan.count = 4096;
  for (auto v : {SorptionVariant::Henry, SorptionVariant::Langmuir, SorptionVariant::Volmer,
                 SorptionVariant::VanDerWaals}) {
    auto m = make_model(v, {1.0, 0.5, 2.0}, {0.5, 1.0, 0.2}, {1.0, 1.0, 1.5}, 1.0, 1.0);
    const auto rep = check_sorption_structure(m, 2.0, plan);
    EXPECT_EQ(rep.verdict, Verdict::Pass) << to_string(v) << ' ' << rep.worst_rule << ' '
                                          << rep.worst_violation;
    EXPECT_EQ(rep.samples, 4096u);
  }
}

TEST(SorptionStructure, FrumkinIncreasesInSurfaceConcentration) {
  auto m = make_model(SorptionVariant::Frumkin, {1.0}, {0.0}, {1.0}, 1.0, 1.0);
  SamplingPlan plan;
  plan.count = 1024;
  const auto rep = check_sorption_structure(m, 2.0, plan);
  EXPECT_EQ(rep.verdict, Verdict::Fail);
  ASSERT_TRUE(rep.witness.has_value());
}

TEST(SorptionStructure, NegatedHenryFailsWithReproducibleWitness) {
  auto henry = make_model(SorptionVariant::Henry, {1.0, 2.0}, {1.0, 0.5}, {1.0, 1.0});
  SorptionFunction broken = [&](std::span<const double> c, std::span<const double> cs) {
    auto s = eval_sorption(henry, c, cs);
    for (auto& x : s) x = -x;
    return s;
  };
  const SorptionBounds k{{1.0, 2.0}, {1.0, 0.5}};
  SamplingPlan plan;
  plan.count = 512;
  const auto rep = check_sorption_structure(broken, k, 3.0, plan);
  ASSERT_EQ(rep.verdict, Verdict::Fail);
  ASSERT_TRUE(rep.witness.has_value());
  const auto again = sorption_structure_violation(broken, k, rep.witness->c, rep.witness->c_surf, 3.0);
  EXPECT_DOUBLE_EQ(again.amount, rep.worst_violation);
  EXPECT_EQ(again.rule, rep.worst_rule);
}

TEST(Reactions, MassActionExamples) {
  ReactionNetwork ab(2);
  ab.add({{1, 0}, {0, 1}, 2.0});
  const auto r1 = eval_reactions(ab, std::vector<double>{3.0, 0.0});
  EXPECT_EQ(r1, (std::vector<double>{-6.0, 6.0}));

  ReactionNetwork abc(3);
  abc.add({{1, 1, 0}, {0, 0, 1}, 1.0});
  const auto r2 = eval_reactions(abc, std::vector<double>{2.0, 3.0, 0.0});
  EXPECT_EQ(r2, (std::vector<double>{-6.0, -6.0, 6.0}));
}

TEST(Reactions, MatrixConstructorMatchesAdd) {
  ReactionNetwork a(3, {{-1}, {-1}, {1}}, {{1}, {1}, {0}}, {1.5});
  ReactionNetwork b(3);
  b.add({{1, 1, 0}, {0, 0, 1}, 1.5});
  const std::vector<double> c{0.3, 1.7, 2.2};
  EXPECT_EQ(eval_reactions(a, c), eval_reactions(b, c));
}

TEST(Reactions, LossVanishesWithSpecies) {
  ReactionNetwork net(2);
  net.add({{1, 0}, {0, 1}, 3.0});
  net.add({{2, 0}, {0, 1}, 1.0});
  EXPECT_GE(eval_reactions(net, std::vector<double>{0.0, 5.0})[0], 0.0);
}

TEST(Reactions, RejectsNegativeInput) {
  ReactionNetwork net(1);
  net.add({{1}, {0}, 1.0});
  EXPECT_THROW(eval_reactions(net, std::vector<double>{-1.0}), domain_error);
}

TEST(Reactions, PermutationEquivariance) {
  ReactionNetwork net(3);
  net.add({{1, 1, 0}, {0, 0, 2}, 1.3});
  net.add({{0, 0, 1}, {1, 0, 0}, 0.7});
  const std::size_t perm[3] = {2, 0, 1};  // new species k is old species perm[k]
  ReactionNetwork permuted(3);
  permuted.add({{0, 1, 1}, {2, 0, 0}, 1.3});
  permuted.add({{1, 0, 0}, {0, 1, 0}, 0.7});
  const std::vector<double> c{0.4, 1.1, 2.5};
  std::vector<double> cp(3);
  for (std::size_t k = 0; k < 3; ++k) cp[k] = c[perm[k]];
  const auto r = eval_reactions(net, c);
  const auto rp = eval_reactions(permuted, cp);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(rp[k], r[perm[k]]);
}

TEST(GrowthExponent, Examples) {
  ReactionNetwork square(1);
  square.add({{2}, {3}, 1.0});
  EXPECT_EQ(growth_exponent(square).gamma, 2);

  ReactionNetwork linear(2);
  linear.add({{1, 0}, {0, 1}, 1.0});
  linear.add({{0, 1}, {1, 0}, 2.0});
  EXPECT_EQ(growth_exponent(linear).gamma, 1);

  ReactionNetwork abc(3);
  abc.add({{1, 1, 0}, {0, 0, 1}, 1.0});
  EXPECT_EQ(growth_exponent(abc).gamma, 2);

  EXPECT_EQ(growth_exponent(ReactionNetwork(2)).gamma, 1);
}

// Central-difference Jacobian, spectral norm via power iteration on J^T J.
double jacobian_norm(const ReactionNetwork& net, const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<std::vector<double>> J(n, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double h = 1e-6 * std::max(1.0, y[j]);
    auto a = y, b = y;
    a[j] += h;
    b[j] = std::max(0.0, b[j] - h);
    const auto ra = eval_reactions(net, a), rb = eval_reactions(net, b);
    for (std::size_t i = 0; i < n; ++i) J[i][j] = (ra[i] - rb[i]) / (a[j] - b[j]);
  }
  std::vector<double> v(n, 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 100; ++it) {
    std::vector<double> w(n, 0.0), z(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i] += J[i][j] * v[j];
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) z[j] += J[i][j] * w[i];
    double norm = 0.0;
    for (double x : z) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    lambda = norm;
    for (std::size_t j = 0; j < n; ++j) v[j] = z[j] / norm;
  }
  return std::sqrt(lambda);
}

TEST(GrowthExponent, CertifiedBoundHoldsOnSamples) {
  std::vector<ReactionNetwork> nets;
  {
    ReactionNetwork n(3);
    n.add({{1, 1, 0}, {0, 0, 1}, 1.5});
    n.add({{0, 0, 1}, {1, 1, 0}, 0.5});
    n.add({{2, 0, 0}, {0, 1, 0}, 2.0});
    nets.push_back(n);
  }
  {
    ReactionNetwork n(2);
    n.add({{2, 1}, {0, 3}, 0.8});
    n.add({{0, 1}, {1, 0}, 1.0});
    nets.push_back(n);
  }
  boost::random::mt19937 rng(11);
  boost::random::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& net : nets) {
    const auto gb = growth_exponent(net);
    for (int k = 0; k < 10000; ++k) {
      const double scale = std::pow(10.0, 3.0 * u(rng) - 1.0);
      std::vector<double> y(net.species());
      for (auto& x : y) x = scale * u(rng);
      double norm = 0.0;
      for (double x : y) norm += x * x;
      norm = std::sqrt(norm);
      const double bound = gb.M * (1.0 + std::pow(norm, gb.gamma - 1));
      ASSERT_LE(jacobian_norm(net, y), bound * (1.0 + 1e-6)) << "sample " << k;
    }
  }
}

TEST(QuasiPositivity, Examples) {
  SamplingPlan plan;
  plan.count = 256;
  ReactionNetwork abc(3);
  abc.add({{1, 1, 0}, {0, 0, 1}, 1.0});
  EXPECT_EQ(check_quasi_positivity(abc, plan, 5.0).verdict, Verdict::Pass);

  RateFunction constant_loss = [](std::span<const double>) { return std::vector<double>{-1.0, 0.0}; };
  const auto bad = check_quasi_positivity(constant_loss, 2, plan, 5.0);
  EXPECT_EQ(bad.verdict, Verdict::Fail);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(bad.witness->c[0], 0.0);

  RateFunction product = [](std::span<const double> c) {
    return std::vector<double>{-c[0] * c[1], c[0] * c[1]};
  };
  EXPECT_EQ(check_quasi_positivity(product, 2, plan, 5.0).verdict, Verdict::Pass);
}

TEST(Triangular, Examples) {
  SamplingPlan plan;
  plan.count = 512;
  ReactionNetwork dimer(2);  // r = (-c1^2, c1^2)
  dimer.add({{2, 0}, {1, 1}, 1.0});
  EXPECT_EQ(check_triangular(dimer, {{{1, 0}, {1, 1}}, 1.0, 0.0}, 10.0, plan).verdict,
            Verdict::Pass);

  ReactionNetwork growth(2);  // r = (c1^2, 0)
  growth.add({{2, 0}, {3, 0}, 1.0});
  const auto rep = check_triangular(growth, {{{1, 0}, {0, 1}}, 1.0, 1.0}, 10.0, plan);
  EXPECT_EQ(rep.verdict, Verdict::Fail);
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_GT(rep.witness->c[0], (1.0 + std::sqrt(5.0)) / 2.0);

  ReactionNetwork ab(2);  // r = (-c1 c2, c1 c2)
  ab.add({{1, 1}, {0, 2}, 1.0});
  EXPECT_EQ(check_triangular(ab, {{{1, 0}, {1, 1}}, 1.0, 0.0}, 10.0, plan).verdict, Verdict::Pass);
}

TEST(Triangular, DimensionMismatch) {
  ReactionNetwork net(2);
  EXPECT_THROW(check_triangular(net, {{{1}}, 1.0, 0.0}, 1.0, {}), usage_error);
}

}  // namespace
}  // namespace bulksurf
