#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "hetnet/community.hpp"
#include "hetnet/datasets_io.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/evaluation.hpp"
#include "test_support.hpp"

namespace hetnet {
namespace {

// Two k-cliques joined by a single edge.
NModeMatrix barbell(std::size_t k) {
  LayeredGraph g(false);
  g.add_layer("L");
  std::vector<NodeRef> nodes;
  for (std::size_t i = 0; i < 2 * k; ++i) nodes.push_back(g.add_node(0, "n" + std::to_string(i)));
  for (std::size_t side = 0; side < 2; ++side) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) g.add_edge(nodes[side * k + i], nodes[side * k + j]);
    }
  }
  g.add_edge(nodes[k - 1], nodes[k]);
  return build_nmode(g);
}

RoundedCentrality random_rounded(std::mt19937_64& rng, Eigen::Index n) {
  RoundedCentrality r;
  r.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) r.values(i, j) = static_cast<std::int64_t>(rng() % 7);
  }
  r.values(0, 0) += 1;
  return r;
}

TEST(Rounding, HalvesAwayFromZero) {
  Eigen::MatrixXd v(2, 3);
  v << 0.5, 1.5, 2.5, 0.49999, 2.4, -0.5;
  const auto r = round_centrality(v);
  EXPECT_EQ(r.values(0, 0), 1);
  EXPECT_EQ(r.values(0, 1), 2);
  EXPECT_EQ(r.values(0, 2), 3);
  EXPECT_EQ(r.values(1, 0), 0);
  EXPECT_EQ(r.values(1, 1), 2);
  EXPECT_EQ(r.values(1, 2), -1);
}

TEST(NullModel, MarginalsAreExact) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 12);
    const auto r = random_rounded(rng, n);
    const auto nm = build_null_model(r);
    EXPECT_EQ(nm.total, r.values.sum());
    EXPECT_EQ(nm.out_paths, r.values.rowwise().sum());
    EXPECT_EQ(nm.in_paths, IntVector(r.values.colwise().sum().transpose()));
    // Integer form of sum(R - expected) = W - (sum out)(sum in) / W.
    EXPECT_EQ(nm.out_paths.sum(), nm.total);
    EXPECT_EQ(nm.in_paths.sum(), nm.total);
    EXPECT_NEAR(nm.expected.sum(), static_cast<double>(nm.total), 1e-9 * static_cast<double>(nm.total));
    for (Eigen::Index i = 0; i < n; ++i) {
      EXPECT_NEAR(nm.expected.row(i).sum(), static_cast<double>(nm.out_paths[i]), 1e-9 * nm.total);
    }
  }
}

TEST(NullModel, ZeroTotalIsDegenerate) {
  RoundedCentrality r;
  r.values = IntMatrix::Zero(3, 3);
  EXPECT_THROW(build_null_model(r), DegenerateNullModelError);
  // alpha = 0 on an edgeless graph reaches the same error through the pipeline
  LayeredGraph g(false);
  g.add_layer("L");
  g.add_node(0, "a");
  g.add_node(0, "b");
  EXPECT_THROW(detect_communities(build_nmode(g), 0.0), DegenerateNullModelError);
}

TEST(Modularity, SingleCommunityIsExactlyZero) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 12);
    const auto r = random_rounded(rng, n);
    const std::vector<std::size_t> one(static_cast<std::size_t>(n), 0);
    EXPECT_EQ(modularity(r, build_null_model(r), one), 0.0);
  }
}

TEST(Modularity, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 10);
    const auto r = random_rounded(rng, n);
    const auto nm = build_null_model(r);
    std::vector<std::size_t> s(static_cast<std::size_t>(n));
    for (auto& x : s) x = rng() % 3;
    const double w = static_cast<double>(r.values.sum());
    double q = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (s[static_cast<std::size_t>(i)] != s[static_cast<std::size_t>(j)]) continue;
        q += static_cast<double>(r.values(i, j)) -
             static_cast<double>(r.values.row(i).sum()) * static_cast<double>(r.values.col(j).sum()) / w;
      }
    }
    EXPECT_NEAR(modularity(r, nm, s), q, 1e-9 * w);
  }
}

TEST(Modularity, MatrixRowsSumToZero) {
  std::mt19937_64 rng(4);
  const auto r = random_rounded(rng, 9);
  const auto b = modularity_matrix(r, build_null_model(r));
  EXPECT_TRUE(b.isApprox(b.transpose()));
  EXPECT_LT(b.rowwise().sum().cwiseAbs().maxCoeff(), 1e-9);
  const std::vector<std::size_t> members{1, 3, 4, 8};
  const auto sub = subgroup_modularity_matrix(b, members);
  EXPECT_EQ(sub.rows(), 4);
  EXPECT_LT(sub.rowwise().sum().cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Modularity, ContinuousFormScalesWithBeta) {
  const auto m = build_nmode(load_builtin("southern_women"));
  const auto truth = load_builtin_partition("southern_women_groups").reordered(m.labels());
  const auto c1 = bonacich_exact(m, {0.1, 1.0});
  const auto c3 = bonacich_exact(m, {0.1, 3.0});
  EXPECT_NEAR(modularity(c3.values, truth.assignment()), 3.0 * modularity(c1.values, truth.assignment()),
              1e-9);
}

TEST(SpectralBisect, SplitsBarbell) {
  const auto m = barbell(5);
  const auto result = detect_communities(m, 0.0);
  ASSERT_EQ(result.partition.community_count(), 2u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(result.partition.community_of(i), i < 5 ? 0u : 1u);
  EXPECT_GT(result.q, 0.0);
}

TEST(SpectralBisect, IndivisibleWhenEigenvalueNotPositive) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3, 3);
  const auto split = spectral_bisect(b);
  EXPECT_FALSE(split.divisible);
  EXPECT_EQ(split.signs, (std::vector<int>{1, 1, 1}));
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  EXPECT_THROW(spectral_bisect(asym), NumericalError);
}

// Leading eigenvector from a full decomposition decides the same split.
TEST(SpectralBisect, AgreesWithDenseEigenvector) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const auto r = random_rounded(rng, 2 + static_cast<Eigen::Index>(rng() % 14));
    const auto b = modularity_matrix(r, build_null_model(r));
    std::vector<std::size_t> all(static_cast<std::size_t>(b.rows()));
    std::iota(all.begin(), all.end(), 0);
    const auto sub = subgroup_modularity_matrix(b, all);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
    const Eigen::Index n = sub.rows();
    const double top = es.eigenvalues()[n - 1];
    if (n > 1 && top - es.eigenvalues()[n - 2] < 1e-6) continue;  // degenerate: any vector in the space
    const auto split = spectral_bisect(sub);
    EXPECT_NEAR(split.eigenvalue, top, 1e-8 * std::max(1.0, top));
    if (top <= 1e-12) continue;
    Eigen::VectorXd v = es.eigenvectors().col(n - 1);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0) v = -v;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v[i]) < 1e-6) continue;
      EXPECT_EQ(split.signs[static_cast<std::size_t>(i)], v[i] > 0 ? 1 : -1);
    }
  }
}

TEST(DetectCommunities, AcceptedSplitsIncreaseQ) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 40; ++t) {
    const auto m = build_nmode(testing::random_graph(rng, 12, t % 2 == 0, 0.3));
    if (m.is_zero()) continue;
    const auto info = spectral_radius(m);
    const double alpha = info.lambda_max > 0 ? 0.4 / info.lambda_max : 0.1;
    const auto result = detect_communities(m, alpha, 1.0, info);
    double q = 0;
    for (const auto& s : result.splits) {
      EXPECT_GT(s.delta_q_raw, 0.0);
      q += s.delta_q;
    }
    EXPECT_NEAR(result.q, q, 1e-9);
    EXPECT_GE(result.q, 0.0);
  }
}

TEST(DetectCommunities, SeriesMethodRuns) {
  const auto m = build_nmode(load_builtin("southern_women"));
  CommunityOptions options;
  options.method = {CentralityMethod::series, 3};
  const auto series = detect_communities(m, 0.06, 1.0, options);
  EXPECT_GE(series.partition.community_count(), 2u);
  EXPECT_THROW(detect_communities(m, 0.16, 1.0, options), DivergenceError);
}

// Integer reference for alpha = 0.06: rounded total 194, Q(truth) from a
// dense numpy computation.
TEST(DetectCommunities, SouthernWomenAtSixHundredths) {
  const auto m = build_nmode(load_builtin("southern_women"));
  const auto result = detect_communities(m, 0.06);
  EXPECT_EQ(result.total_paths, 194);
  const auto truth = load_builtin_partition("southern_women_groups");
  EXPECT_TRUE(same_grouping(result.partition, truth));
  EXPECT_NEAR(result.q, 0.31161653735784883, 1e-12);
}

TEST(DetectCommunities, InvariantUnderNodeShuffling) {
  const LayeredGraph g = load_builtin("southern_women");
  std::mt19937_64 rng(7);
  for (double alpha : {0.0, 0.06, 0.1}) {
    const auto reference = detect_communities(build_nmode(g), alpha);
    for (int t = 0; t < 5; ++t) {
      const auto shuffled = detect_communities(build_nmode(testing::shuffled_copy(g, rng)), alpha);
      EXPECT_TRUE(same_grouping(reference.partition, shuffled.partition)) << alpha;
      EXPECT_NEAR(reference.q, shuffled.q, 1e-12);
    }
  }
}

TEST(DetectCommunities, Deterministic) {
  const auto m = build_nmode(load_builtin("southern_women"));
  const auto a = detect_communities(m, 0.1);
  const auto b = detect_communities(m, 0.1);
  EXPECT_EQ(a.partition, b.partition);
  EXPECT_EQ(a.q, b.q);
}

}  // namespace
}  // namespace hetnet
