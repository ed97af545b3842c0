#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/fixtures.hpp"

using namespace pprei;
using namespace pprei::test;

TEST(FrobeniusError, Examples) {
  const Graph k3 = complete_graph(3);
  EXPECT_EQ(relative_frobenius_error(k3, k3), 0.0);
  EXPECT_EQ(relative_frobenius_error(k3, Graph::from_edges(3, {})), 1.0);
  // K3 on four nodes with edge (1,2) swapped for (0,3).
  const Graph a = from_pairs(4, {{0, 1}, {0, 2}, {1, 2}});
  const Graph b = from_pairs(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_NEAR(relative_frobenius_error(a, b), std::sqrt(2.0 / 3.0), 1e-12);
}

TEST(FrobeniusError, MatchesDenseNorm) {
  const Graph a = random_connected(20, 0.2, 1);
  const Graph b = random_connected(20, 0.2, 2);
  const double dense = (a.adjacency() - b.adjacency()).norm() / a.adjacency().norm();
  EXPECT_NEAR(relative_frobenius_error(a, b), dense, 1e-12);
  const double swapped = relative_frobenius_error(b, a) * b.adjacency().norm() / a.adjacency().norm();
  EXPECT_NEAR(swapped, relative_frobenius_error(a, b), 1e-12);
}

TEST(FrobeniusError, Errors) {
  EXPECT_THROW(relative_frobenius_error(path_graph(3), path_graph(4)), Error);
  EXPECT_THROW(relative_frobenius_error(Graph::from_edges(3, {}), path_graph(3)), Error);
}

TEST(PathLength, Examples) {
  EXPECT_DOUBLE_EQ(average_path_length(path_graph(3)).mean, 4.0 / 3.0);
  EXPECT_EQ(relative_path_length_error(path_graph(3), path_graph(3)), 0.0);
  EXPECT_NEAR(relative_path_length_error(path_graph(3), complete_graph(3)), 0.25, 1e-15);
  const Graph k4_minus = from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_NEAR(average_path_length(k4_minus).mean, 7.0 / 6.0, 1e-15);
  EXPECT_NEAR(relative_path_length_error(complete_graph(4), k4_minus), 1.0 / 6.0, 1e-15);
}

TEST(PathLength, DisconnectedPairsSkipped) {
  const Graph g = from_pairs(5, {{0, 1}, {1, 2}, {3, 4}});
  const auto s = average_path_length(g);
  EXPECT_EQ(s.connected_pairs, 4u);
  EXPECT_DOUBLE_EQ(s.mean, (1 + 1 + 2 + 1) / 4.0);
  const auto c = compare_path_lengths(path_graph(5), g);
  EXPECT_EQ(c.original.connected_pairs, 10u);
  EXPECT_EQ(c.recovered.connected_pairs, 4u);
  EXPECT_EQ(average_path_length(Graph::from_edges(3, {})).mean, 0.0);
  EXPECT_THROW(relative_path_length_error(Graph::from_edges(3, {}), path_graph(3)), Error);
}

TEST(ConductanceError, Examples) {
  const Graph g = barbell();
  const std::vector<NodeId> s{0, 1, 2};
  EXPECT_EQ(relative_conductance_error(g, g, s), 0.0);
  // Second cut edge 1-4: cut 2, vol(S) = 8.
  const Graph doubled = from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}, {1, 4}});
  EXPECT_NEAR(relative_conductance_error(g, doubled, s), 0.75, 1e-12);
  const Graph split = from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  EXPECT_NEAR(relative_conductance_error(g, split, s), 1.0, 1e-15);
  // S loses all volume in the recovered graph.
  const Graph empty_side = from_pairs(6, {{3, 4}, {3, 5}, {4, 5}});
  EXPECT_NEAR(relative_conductance_error(g, empty_side, s), 1.0, 1e-15);
}

TEST(ConductanceError, ZeroOriginalRejected) {
  const Graph split = from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  EXPECT_THROW(relative_conductance_error(split, barbell(), std::vector<NodeId>{0, 1, 2}), Error);
}

TEST(ConductanceError, ZeroForIdenticalGraphs) {
  const Graph g = random_connected(16, 0.2, 3);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    std::vector<NodeId> s;
    for (NodeId u = 0; u < 16; ++u) {
      if (rng() % 3 == 0) s.push_back(u);
    }
    if (s.empty() || s.size() == 16) continue;
    EXPECT_EQ(relative_conductance_error(g, g, s), 0.0);
  }
}

TEST(Report, IdenticalGraphsAllZero) {
  const PlantedGraph p = sbm(40, 4, 0.4, 0.05, 1);
  const auto labels = make_communities(p.labels);
  const RecoveryReport r = recovery_report(p.graph, p.graph, &labels);
  EXPECT_EQ(r.err_a, 0.0);
  EXPECT_EQ(r.err_l, 0.0);
  ASSERT_TRUE(r.err_phi_avg.has_value());
  EXPECT_EQ(*r.err_phi_avg, 0.0);
  EXPECT_EQ(r.per_community.size(), 4u);
}

TEST(Report, TwoCommunitiesAveraged) {
  const Graph g = barbell();
  const Graph h = from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}, {1, 4}});
  const std::vector<std::string> lab{"a", "a", "a", "b", "b", "b"};
  const auto labels = make_communities(lab);
  const RecoveryReport r = recovery_report(g, h, &labels);
  ASSERT_EQ(r.per_community.size(), 2u);
  double mean = 0.0;
  for (const auto& c : r.per_community) mean += *c.rel_err;
  EXPECT_DOUBLE_EQ(*r.err_phi_avg, mean / 2.0);
  EXPECT_NEAR(*r.err_phi_avg, 0.75, 1e-12);
}

TEST(Report, TopFourBySizeAndExclusion) {
  // Six communities; the largest is a separate component with zero conductance.
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId u = 0; u < 6; ++u) e.emplace_back(u, (u + 1) % 6);  // ring 0..5
  for (NodeId u = 6; u < 15; ++u) e.emplace_back(u, u + 1);        // path 6..15
  const Graph g = from_pairs(16, e);
  std::vector<std::string> lab(16);
  for (int u = 0; u < 6; ++u) lab[u] = "big";
  const char* small[] = {"p", "p", "q", "q", "q", "r", "r", "s", "t", "t"};
  for (int u = 6; u < 16; ++u) lab[u] = small[u - 6];
  const auto labels = make_communities(lab);
  const RecoveryReport r = recovery_report(g, g, &labels);
  ASSERT_EQ(r.per_community.size(), 4u);
  EXPECT_EQ(r.per_community[0].label, "big");
  EXPECT_TRUE(r.per_community[0].excluded);
  EXPECT_FALSE(r.per_community[0].rel_err.has_value());
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_GE(r.per_community[i - 1].size, r.per_community[i].size);
    EXPECT_FALSE(r.per_community[i].excluded);
  }
  EXPECT_EQ(*r.err_phi_avg, 0.0);
  const auto j = to_json(r);
  EXPECT_EQ(j["per_community"][0]["excluded"], true);
  EXPECT_TRUE(j["per_community"][0]["rel_err"].is_null());
}

TEST(Report, WithoutLabels) {
  const Graph g = karate();
  const RecoveryReport r = recovery_report(g, g, nullptr);
  EXPECT_FALSE(r.conductance_available);
  const auto j = to_json(r);
  EXPECT_FALSE(j.contains("per_community"));
  EXPECT_EQ(j["conductance_available"], false);
  EXPECT_EQ(j["err_A"], 0.0);
  EXPECT_EQ(j["connected_pairs_orig"], 561);
}

TEST(Report, SbmOptimizationRunIsFinite) {
  const PlantedGraph p = sbm(60, 4, 0.3, 0.03, 11);
  const auto labels = make_communities(p.labels);
  PresetParams params;
  const auto cfg = preset_config(Preset::strap, params);
  const DenseMatrix target = reconstruct_proximity(factorize(build_proximity(p.graph, cfg), 16, 0));
  OptConfig oc;
  oc.form = ForwardForm::from_config(cfg);
  oc.target_volume = static_cast<double>(p.graph.volume());
  const Graph g_hat = invert_optimize(target, oc, p.graph.num_edges()).graph;
  const RecoveryReport r = recovery_report(p.graph, g_hat, &labels, {{"dim", 16}});
  EXPECT_TRUE(std::isfinite(r.err_a));
  EXPECT_TRUE(std::isfinite(r.err_l));
  ASSERT_TRUE(r.err_phi_avg.has_value());
  EXPECT_TRUE(std::isfinite(*r.err_phi_avg));
  EXPECT_EQ(r.per_community.size(), 4u);
  EXPECT_EQ(to_json(r)["meta"]["dim"], 16);
}
