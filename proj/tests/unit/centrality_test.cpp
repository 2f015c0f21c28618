#include <random>

#include <gtest/gtest.h>

#include "hetnet/centrality.hpp"
#include "hetnet/datasets_io.hpp"
#include "hetnet/eigensolver.hpp"
#include "hetnet/errors.hpp"
#include "test_support.hpp"

namespace hetnet {
namespace {

NModeMatrix single_edge() {
  LayeredGraph g(false);
  g.add_layer("L");
  auto a = g.add_node(0, "a");
  auto b = g.add_node(0, "b");
  g.add_edge(a, b);
  return build_nmode(g);
}

NModeMatrix ring(std::size_t n, std::size_t reach) {
  LayeredGraph g(false);
  g.add_layer("L");
  std::vector<NodeRef> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(g.add_node(0, "n" + std::to_string(i)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 1; d <= reach; ++d) {
      const std::size_t j = (i + d) % n;
      if (i < j || i + d >= n) g.add_edge(nodes[i], nodes[j]);
    }
  }
  return build_nmode(g);
}

TEST(Eigensolver, StartVectorIsDeterministicAndNormalised) {
  const auto v = default_start_vector(5);
  EXPECT_NEAR(v.norm(), 1.0, 1e-15);
  EXPECT_LT(v[0], v[4]);
  EXPECT_EQ(v, default_start_vector(5));
}

TEST(Eigensolver, LanczosMatchesFullDecomposition) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 80);
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = gauss(rng);
    }
    m = (m + m.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(m);
    const Eigenpair p = largest_eigenpair_symmetric(m);
    EXPECT_NEAR(p.value, oracle.eigenvalues()[n - 1], 1e-8 * std::max(1.0, std::abs(p.value)));
    EXPECT_LE(p.residual, 1e-10);
    EXPECT_NEAR(p.vector.norm(), 1.0, 1e-12);
    Eigen::Index imax = 0;
    p.vector.cwiseAbs().maxCoeff(&imax);
    EXPECT_GT(p.vector[imax], 0.0);
  }
}

TEST(Eigensolver, PerronRootOfAsymmetricMatrix) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto m = build_nmode(testing::random_graph(rng, 12, true, 0.5, false));
    if (m.is_zero()) continue;
    const Eigenpair p = perron_eigenpair(m.entries());
    EXPECT_NEAR(p.value, testing::spectral_radius_oracle(m.dense()), 1e-7);
  }
}

TEST(SpectralRadius, SingleEdgeIsOne) {
  EXPECT_NEAR(spectral_radius(single_edge()).lambda_max, 1.0, 1e-12);
}

TEST(SpectralRadius, RegularGraphEqualsDegree) {
  EXPECT_NEAR(spectral_radius(ring(10, 1)).lambda_max, 2.0, 1e-10);
  EXPECT_NEAR(spectral_radius(ring(11, 3)).lambda_max, 6.0, 1e-10);
}

TEST(SpectralRadius, ZeroMatrixHasZeroSpectrum) {
  LayeredGraph g(false);
  g.add_layer("L");
  g.add_node(0, "a");
  g.add_node(0, "b");
  const auto info = spectral_radius(build_nmode(g));
  EXPECT_EQ(info.lambda_max, 0.0);
  EXPECT_FALSE(max_alpha(info).has_value());
  EXPECT_TRUE(is_admissible(100.0, info));
}

// Independent value from a dense symmetric eigendecomposition.
TEST(SpectralRadius, SouthernWomen) {
  const auto info = spectral_radius(build_nmode(load_builtin("southern_women")));
  EXPECT_NEAR(info.lambda_max, 6.741908124910312, 1e-9);
  EXPECT_LE(info.residual, 1e-10);
  EXPECT_NEAR(*max_alpha(info), 0.1483259607625257, 1e-10);
}

TEST(SpectralRadius, RandomGraphsAgreeWithOracle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const auto m = build_nmode(testing::random_graph(rng, 12, t % 3 == 0, 0.4, false));
    EXPECT_NEAR(spectral_radius(m).lambda_max, testing::spectral_radius_oracle(m.dense()), 1e-7);
  }
}

TEST(Admissibility, BoundaryIsRejected) {
  SpectralInfo info;
  info.lambda_max = 4.0;
  EXPECT_TRUE(is_admissible(0.0, info));
  EXPECT_TRUE(is_admissible(0.2499, info));
  EXPECT_FALSE(is_admissible(0.25, info));
  EXPECT_FALSE(is_admissible(-0.1, info));
  try {
    require_admissible(0.3, info);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.alpha(), 0.3);
    EXPECT_EQ(e.bound(), 0.25);
    EXPECT_NE(std::string(e.what()).find("0.25"), std::string::npos);
  }
}

// Closed form: A = [[0,1],[1,0]], C = A (I - A/2)^-1 = [[2/3, 4/3], [4/3, 2/3]].
TEST(BonacichExact, TwoNodeClosedForm) {
  const auto c = bonacich_exact(single_edge(), {0.5, 1.0});
  EXPECT_NEAR(c.values(0, 0), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(c.values(0, 1), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(c.values(1, 0), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(c.values(1, 1), 2.0 / 3.0, 1e-14);
  EXPECT_LT(testing::max_abs_diff(c.values, testing::series_oracle(single_edge().dense(), 0.5, 1.0, 60)),
            1e-12);
}

TEST(BonacichExact, AlphaZeroIsBetaA) {
  const auto m = build_nmode(load_builtin("southern_women"));
  const auto c = bonacich_exact(m, {0.0, 2.5});
  EXPECT_EQ(c.values, 2.5 * m.dense());
}

TEST(BonacichExact, RejectsDivergentAlpha) {
  const auto m = build_nmode(load_builtin("southern_women"));
  EXPECT_THROW(bonacich_exact(m, {0.16, 1.0}), DivergenceError);
  EXPECT_THROW(bonacich_exact(m, {0.2, 1.0}), DivergenceError);
  EXPECT_NO_THROW(bonacich_exact(m, {0.148, 1.0}));
}

TEST(BonacichExact, RejectsNonPositiveBeta) {
  EXPECT_THROW(bonacich_exact(single_edge(), {0.1, 0.0}), DataError);
  EXPECT_THROW(bonacich_exact(single_edge(), {-0.1, 1.0}), DataError);
}

// Independent dense inverse in numpy: C = A (I - 0.1 A)^-1.
TEST(BonacichExact, SouthernWomenReference) {
  const auto c = bonacich_exact(build_nmode(load_builtin("southern_women")), {0.1, 1.0});
  EXPECT_NEAR(c.values.row(0).sum(), 24.978585365844715, 1e-10);
  EXPECT_NEAR(c.values(0, 18), 1.3317935753429515, 1e-12);
  EXPECT_NEAR(c.values.sum(), 554.8380168835902, 1e-8);
}

TEST(BonacichExact, RecurrenceAndOracleOnRandomGraphs) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto m = build_nmode(testing::random_graph(rng, 12, t % 2 == 0, 0.4, false));
    const auto info = spectral_radius(m);
    const double alpha = info.lambda_max > 0 ? 0.5 / info.lambda_max : 0.3;
    const auto c = bonacich_exact(m, {alpha, 1.7}, info);
    EXPECT_LE(recurrence_residual(m, c), 1e-8);
    EXPECT_LT(testing::max_abs_diff(c.values, testing::series_oracle(m.dense(), alpha, 1.7, 60)),
              1e-6);
    EXPECT_GE(c.values.minCoeff(), -1e-12);
  }
}

TEST(BonacichSeries, OneTermIsBetaA) {
  const auto m = build_nmode(load_builtin("southern_women"));
  EXPECT_EQ(bonacich_series(m, {0.1, 3.0}, 1).values, 3.0 * m.dense());
}

TEST(BonacichSeries, ThreeTermsMatchesOracle) {
  const auto m = build_nmode(load_builtin("southern_women"));
  const auto c = bonacich_series(m, {0.1, 1.0}, 3);
  EXPECT_LT(testing::max_abs_diff(c.values, testing::series_oracle(m.dense(), 0.1, 1.0, 3)), 1e-12);
}

TEST(BonacichSeries, ConvergesToExactWithTerms) {
  const auto m = build_nmode(load_builtin("southern_women"));
  const auto exact = bonacich_exact(m, {0.05, 1.0});
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t terms : {1, 3, 6, 12, 24}) {
    const double err = testing::max_abs_diff(bonacich_series(m, {0.05, 1.0}, terms).values, exact.values);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-8);
}

TEST(Centrality, MonotoneInAlpha) {
  const auto m = build_nmode(load_builtin("southern_women"));
  Eigen::MatrixXd previous = bonacich_exact(m, {0.0, 1.0}).values;
  for (double a : {0.02, 0.04, 0.08, 0.12, 0.14}) {
    const Eigen::MatrixXd next = bonacich_exact(m, {a, 1.0}).values;
    EXPECT_TRUE((next.array() >= previous.array() - 1e-12).all()) << a;
    previous = next;
  }
}

TEST(Centrality, LinearInBeta) {
  const auto m = build_nmode(load_builtin("southern_women"));
  const auto one = bonacich_exact(m, {0.1, 1.0});
  const auto four = bonacich_exact(m, {0.1, 4.0});
  EXPECT_LT(testing::max_abs_diff(four.values, 4.0 * one.values), 1e-10);
}

TEST(Centrality, NodeScoresAreRowSums) {
  const auto c = bonacich_exact(single_edge(), {0.5, 1.0});
  const Eigen::VectorXd s = node_scores(c);
  EXPECT_NEAR(s[0], 2.0, 1e-14);
  EXPECT_NEAR(s[1], 2.0, 1e-14);
}

TEST(Centrality, ComputeDispatchesOnMethod) {
  const auto m = build_nmode(load_builtin("southern_women"));
  const auto info = spectral_radius(m);
  const auto exact = compute_centrality(m, {0.1, 1.0}, {CentralityMethod::exact, 3}, info);
  const auto series = compute_centrality(m, {0.1, 1.0}, {CentralityMethod::series, 3}, info);
  EXPECT_EQ(exact.values, bonacich_exact(m, {0.1, 1.0}, info).values);
  EXPECT_EQ(series.values, bonacich_series(m, {0.1, 1.0}, 3).values);
}

}  // namespace
}  // namespace hetnet
