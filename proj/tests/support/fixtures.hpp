#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pprei/pprei.hpp"

namespace pprei::test {

Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// Two triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
Graph barbell();
Graph karate();
Graph from_pairs(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs);

/// Random spanning tree plus independent extra edges with probability p.
Graph random_connected(std::size_t n, double p, std::uint64_t seed);

struct PlantedGraph {
  Graph graph;
  std::vector<std::string> labels;  // per node, "c0", "c1", ...
};

/// Stochastic block model with equal-ish block sizes.  Isolated nodes are
/// attached to a random member of their own block so the result has none.
PlantedGraph sbm(std::size_t n, std::size_t blocks, double p_in, double p_out,
                 std::uint64_t seed);

/// Rank of the adjacency matrix from its eigenvalues (|lambda| > 1e-9).
bool adjacency_full_rank(const Graph& g);

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);
DenseMatrix random_symmetric(std::size_t n, std::uint64_t seed);

std::string data_path(const std::string& name);

}  // namespace pprei::test
