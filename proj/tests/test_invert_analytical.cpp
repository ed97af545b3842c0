#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace pprei;
using namespace pprei::test;

namespace {

DenseMatrix deepwalk_proximity(const Graph& g, double alpha, std::size_t k) {
  PresetParams p;
  p.alpha = alpha;
  p.horizon = k;
  p.volume = static_cast<double>(g.volume());
  return build_proximity(g, preset_config(Preset::deepwalk_netmf, p));
}

DenseMatrix normalized_laplacian(const Graph& g) {
  const auto d = g.degree_vector();
  DenseMatrix l = -g.adjacency();
  for (Eigen::Index u = 0; u < l.rows(); ++u) {
    for (Eigen::Index v = 0; v < l.cols(); ++v) l(u, v) /= std::sqrt(d[u] * d[v]);
  }
  l.diagonal().array() += 1.0;
  return l;
}

AnalyticalInputs inputs_for(const Graph& g, DenseMatrix m, double alpha, std::size_t k) {
  AnalyticalInputs in;
  in.proximity = std::move(m);
  in.degrees = g.degree_vector();
  in.volume = static_cast<double>(g.volume());
  in.alpha = alpha;
  in.horizon = k;
  in.num_edges = g.num_edges();
  return in;
}

Graph full_rank_graph(std::size_t n, std::uint64_t seed) {
  for (std::uint64_t s = seed;; s += 1000) {
    Graph g = random_connected(n, 0.25, s);
    if (adjacency_full_rank(g)) return g;
  }
}

}  // namespace

TEST(EstimateMInfinity, ElementwiseValues) {
  const DenseMatrix zero = DenseMatrix::Zero(3, 3);
  EXPECT_LT((estimate_m_infinity(zero, 10) - DenseMatrix::Constant(3, 3, 9.0)).norm(), 1e-12);
  const DenseMatrix log2 = DenseMatrix::Constant(3, 3, std::log(2.0));
  EXPECT_LT((estimate_m_infinity(log2, 10) - DenseMatrix::Constant(3, 3, 19.0)).norm(), 1e-12);
  EXPECT_THROW(estimate_m_infinity(zero, 0), Error);
}

TEST(EstimateMInfinity, MatchesClosedFormOnTriangle) {
  const Graph g = complete_graph(3);
  const DenseMatrix est = estimate_m_infinity(deepwalk_proximity(g, 0.7, 500), 500);
  const auto ref = oracle::deepwalk_m_infinity(g, 0.7);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(est(i, j), ref[i][j], 1e-4);
  }
}

TEST(EstimateMInfinity, Monotone) {
  const DenseMatrix a = random_matrix(6, 6, 1);
  const DenseMatrix b = a + random_matrix(6, 6, 2).cwiseAbs();
  EXPECT_TRUE((estimate_m_infinity(b, 7).array() >= estimate_m_infinity(a, 7).array()).all());
}

TEST(RecoverLaplacian, TriangleAndSingleEdge) {
  for (const Graph& g : {complete_graph(3), complete_graph(2)}) {
    const DenseMatrix m_inf = oracle::from_table(oracle::deepwalk_m_infinity(g, 0.7));
    const auto d = g.degree_vector();
    const DenseMatrix l = recover_laplacian(m_inf, d, static_cast<double>(g.volume()), 0.7);
    EXPECT_LT((l - normalized_laplacian(g)).cwiseAbs().maxCoeff(), 1e-6);
  }
  const Graph k2 = complete_graph(2);
  const DenseMatrix l = recover_laplacian(oracle::from_table(oracle::deepwalk_m_infinity(k2, 0.7)),
                                          k2.degree_vector(), 2.0, 0.7);
  EXPECT_NEAR(l(0, 0), 1.0, 1e-6);
  EXPECT_NEAR(l(0, 1), -1.0, 1e-6);
}

TEST(RecoverLaplacian, SymmetricAndAnnihilatesRootDegrees) {
  const Graph g = random_connected(14, 0.2, 3);
  const DenseMatrix m_inf = oracle::from_table(oracle::deepwalk_m_infinity(g, 0.7));
  const auto d = g.degree_vector();
  const DenseMatrix l = recover_laplacian(m_inf, d, static_cast<double>(g.volume()), 0.7);
  EXPECT_TRUE(is_symmetric(l, 1e-8));
  Vector root(d.size());
  for (std::size_t u = 0; u < d.size(); ++u) root(u) = std::sqrt(d[u]);
  EXPECT_LT((l * root).cwiseAbs().maxCoeff(), 1e-4);

  const DenseMatrix noisy = m_inf + 0.01 * random_matrix(14, 14, 4);
  EXPECT_TRUE(is_symmetric(recover_laplacian(noisy, d, g.volume(), 0.7), 1e-8));
}

TEST(RecoverAdjacency, Examples) {
  const Graph k3 = complete_graph(3);
  const DenseMatrix a = recover_adjacency(normalized_laplacian(k3), k3.degree_vector());
  EXPECT_LT((a - k3.adjacency()).cwiseAbs().maxCoeff(), 1e-8);
  const std::vector<double> d{1.0, 3.0, 2.0};
  EXPECT_LT(recover_adjacency(DenseMatrix::Identity(3, 3), d).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RecoverAdjacency, EndToEndFullRank) {
  const Graph g = full_rank_graph(12, 5);
  const auto in = inputs_for(g, deepwalk_proximity(g, 0.7, 2000), 0.7, 2000);
  const DenseMatrix l = recover_laplacian(estimate_m_infinity(in.proximity, 2000), in.degrees,
                                          in.volume, 0.7);
  const DenseMatrix a = recover_adjacency(l, in.degrees);
  EXPECT_LT((a - g.adjacency()).cwiseAbs().maxCoeff(), 1e-2);
}

TEST(Binarize, TopEntries) {
  DenseMatrix s = DenseMatrix::Zero(3, 3);
  s(0, 1) = 0.9;
  s(0, 2) = 0.5;
  s(1, 2) = 0.1;
  EXPECT_EQ(binarize(s, 2).edges(), (std::vector<Edge>{{0, 1}, {0, 2}}));
}

TEST(Binarize, TiesLexicographic) {
  const DenseMatrix s = DenseMatrix::Constant(4, 4, 0.3);
  EXPECT_EQ(binarize(s, 1).edges(), (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(binarize(s, 3).edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}));
}

TEST(Binarize, CompleteAndTooMany) {
  const DenseMatrix s = random_matrix(5, 5, 1);
  EXPECT_EQ(binarize(s, 10).num_edges(), 10u);
  EXPECT_THROW(binarize(s, 11), Error);
}

TEST(Binarize, IgnoresLowerTriangleAndDiagonal) {
  DenseMatrix s = DenseMatrix::Zero(3, 3);
  s(1, 0) = 5.0;
  s(2, 2) = 9.0;
  s(1, 2) = 0.2;
  EXPECT_EQ(binarize(s, 1).edges(), (std::vector<Edge>{{1, 2}}));
}

TEST(Binarize, NanRanksLast) {
  DenseMatrix s = DenseMatrix::Zero(3, 3);
  s(0, 1) = std::numeric_limits<double>::quiet_NaN();
  s(0, 2) = -4.0;
  s(1, 2) = -5.0;
  EXPECT_EQ(binarize(s, 2).edges(), (std::vector<Edge>{{0, 2}, {1, 2}}));
}

TEST(Binarize, EdgeCountExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseMatrix s = random_symmetric(15, seed);
    const std::size_t m = 5 + seed * 7;
    EXPECT_EQ(binarize(s, m).num_edges(), m);
  }
}

TEST(InvertAnalytical, TriangleExact) {
  const Graph g = complete_graph(3);
  const auto r = invert_analytical(inputs_for(g, deepwalk_proximity(g, 0.7, 2000), 0.7, 2000));
  EXPECT_EQ(r.graph.edges(), g.edges());
}

TEST(InvertAnalytical, FullRankRandomGraphsExact) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Graph g = full_rank_graph(10 + 2 * seed, 50 + seed);
    const auto r = invert_analytical(inputs_for(g, deepwalk_proximity(g, 0.7, 2000), 0.7, 2000));
    EXPECT_EQ(r.graph.edges(), g.edges()) << "seed " << seed;
  }
}

TEST(InvertAnalytical, TruncatedEmbeddingIsLossy) {
  const Graph g = full_rank_graph(14, 77);
  const DenseMatrix m = deepwalk_proximity(g, 0.7, 2000);
  const DenseMatrix low = reconstruct_proximity(factorize(m, 4, 0));
  const auto r = invert_analytical(inputs_for(g, low, 0.7, 2000));
  const double err = relative_frobenius_error(g, r.graph);
  EXPECT_GT(err, 0.0);
  EXPECT_TRUE(std::isfinite(err));
}

TEST(InvertAnalytical, InputValidation) {
  const Graph g = complete_graph(3);
  auto in = inputs_for(g, deepwalk_proximity(g, 0.7, 10), 0.7, 10);
  auto bad = in;
  bad.degrees[0] = 0.0;
  EXPECT_THROW(invert_analytical(bad), Error);
  bad = in;
  bad.volume += 1.0;
  EXPECT_THROW(invert_analytical(bad), Error);
  bad = in;
  bad.alpha = 1.0;
  EXPECT_THROW(invert_analytical(bad), Error);
  bad = in;
  bad.degrees.pop_back();
  EXPECT_THROW(invert_analytical(bad), Error);
  bad = in;
  bad.horizon = 0;
  EXPECT_THROW(invert_analytical(bad), Error);
}
