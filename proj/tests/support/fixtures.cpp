#include "support/fixtures.hpp"

#include <random>
#include <set>

#include <Eigen/Eigenvalues>

namespace pprei::test {

Graph from_pairs(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> p;
  for (NodeId u = 0; u + 1 < n; ++u) p.emplace_back(u, u + 1);
  return from_pairs(n, p);
}

Graph complete_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> p;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) p.emplace_back(u, v);
  }
  return from_pairs(n, p);
}

Graph barbell() { return from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}}); }

Graph karate() { return read_edge_list(data_path("karate.txt")).graph; }

Graph random_connected(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> pick(0, v - 1);
    edges.emplace(pick(rng), v);
  }
  std::bernoulli_distribution coin(p);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace(u, v);
    }
  }
  return from_pairs(n, {edges.begin(), edges.end()});
}

PlantedGraph sbm(std::size_t n, std::size_t blocks, double p_in, double p_out,
                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> block(n);
  for (std::size_t u = 0; u < n; ++u) block[u] = u * blocks / n;
  std::set<std::pair<NodeId, NodeId>> edges;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (unif(rng) < (block[u] == block[v] ? p_in : p_out)) edges.emplace(u, v);
    }
  }
  std::vector<std::size_t> deg(n, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  for (NodeId u = 0; u < n; ++u) {
    if (deg[u] > 0) continue;
    std::vector<NodeId> mates;
    for (NodeId v = 0; v < n; ++v) {
      if (v != u && block[v] == block[u]) mates.push_back(v);
    }
    std::uniform_int_distribution<std::size_t> pick(0, mates.size() - 1);
    const NodeId v = mates[pick(rng)];
    edges.emplace(std::min(u, v), std::max(u, v));
    ++deg[u];
    ++deg[v];
  }
  PlantedGraph out;
  out.graph = from_pairs(n, {edges.begin(), edges.end()});
  for (std::size_t u = 0; u < n; ++u) out.labels.push_back("c" + std::to_string(block[u]));
  return out;
}

bool adjacency_full_rank(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(g.adjacency()));
  return (es.eigenvalues().array().abs() > 1e-9).all();
}

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

DenseMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
  const DenseMatrix a = random_matrix(n, n, seed);
  return 0.5 * (a + a.transpose());
}

std::string data_path(const std::string& name) { return std::string(PPREI_TEST_DATA_DIR) + "/" + name; }

}  // namespace pprei::test
