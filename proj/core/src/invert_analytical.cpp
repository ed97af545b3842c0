#include "pprei/invert_analytical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pprei/error.hpp"

namespace pprei {

void AnalyticalInputs::validate() const {
  const auto n = static_cast<std::size_t>(proximity.rows());
  if (proximity.rows() != proximity.cols()) throw Error("proximity matrix must be square");
  if (degrees.size() != n) {
    throw Error("degree sequence has " + std::to_string(degrees.size()) + " entries for " +
                std::to_string(n) + " nodes");
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (!(degrees[u] >= 1.0)) throw Error("degree of node " + std::to_string(u) + " is below 1");
  }
  const double total = std::accumulate(degrees.begin(), degrees.end(), 0.0);
  if (std::abs(total - volume) > 1e-9 * std::max(1.0, volume)) {
    throw Error("volume does not equal the sum of degrees");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must lie in (0, 1)");
  if (horizon < 1) throw Error("horizon K must be at least 1");
  if (names && names->size() != n) throw Error("name table size does not match the matrix");
}

DenseMatrix estimate_m_infinity(const DenseMatrix& proximity, std::size_t horizon) {
  if (horizon < 1) throw Error("horizon K must be at least 1");
  const double k = static_cast<double>(horizon);
  return (k * proximity.array().exp() - 1.0).matrix();
}

DenseMatrix recover_laplacian(const DenseMatrix& m_inf, std::span<const double> degrees,
                              double volume, double alpha, double pinv_tol) {
  const auto n = m_inf.rows();
  if (m_inf.cols() != n || static_cast<std::size_t>(n) != degrees.size()) {
    throw Error("M_inf must be square and match the degree sequence");
  }
  Vector root(n);
  for (Eigen::Index u = 0; u < n; ++u) root(u) = std::sqrt(degrees[u]);

  const double c = (1.0 - alpha) / (alpha * volume);
  DenseMatrix z = (c * root).asDiagonal() * (m_inf.array() + 1.0).matrix() * root.asDiagonal();
  z.diagonal().array() += 1.0;

  DenseMatrix l = pseudoinverse(symmetrized(z), pinv_tol);
  l.diagonal().array() -= alpha;
  l /= (1.0 - alpha);
  return symmetrized(l);
}

DenseMatrix recover_adjacency(const DenseMatrix& laplacian, std::span<const double> degrees) {
  const auto n = laplacian.rows();
  if (laplacian.cols() != n || static_cast<std::size_t>(n) != degrees.size()) {
    throw Error("Laplacian must be square and match the degree sequence");
  }
  Vector root(n);
  for (Eigen::Index u = 0; u < n; ++u) root(u) = std::sqrt(degrees[u]);
  DenseMatrix a = -laplacian;
  a.diagonal().array() += 1.0;
  return root.asDiagonal() * a * root.asDiagonal();
}

Graph binarize(const DenseMatrix& soft, std::size_t num_edges,
               std::shared_ptr<const NodeNames> names) {
  if (soft.rows() != soft.cols()) throw Error("binarize needs a square matrix");
  const auto n = static_cast<std::size_t>(soft.rows());
  const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
  if (num_edges > pairs) {
    throw Error("cannot place " + std::to_string(num_edges) + " edges among " +
                std::to_string(pairs) + " node pairs");
  }

  std::vector<Edge> candidates;
  candidates.reserve(pairs);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) candidates.push_back({u, v});
  }
  auto score = [&](const Edge& e) {
    const double x = soft(e.u, e.v);
    return std::isnan(x) ? -std::numeric_limits<double>::infinity() : x;
  };
  // Candidates are generated in lexicographic order, so a stable ordering on
  // score alone gives the (row, col) tie-break.
  auto by_score = [&](const Edge& a, const Edge& b) {
    const double sa = score(a);
    const double sb = score(b);
    if (sa != sb) return sa > sb;
    return a < b;
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(num_edges),
                    candidates.end(), by_score);
  candidates.resize(num_edges);
  return Graph::from_edges(n, candidates, std::move(names));
}

AnalyticalResult invert_analytical(const AnalyticalInputs& in) {
  in.validate();
  const DenseMatrix m_inf = estimate_m_infinity(in.proximity, in.horizon);
  const DenseMatrix laplacian = recover_laplacian(m_inf, in.degrees, in.volume, in.alpha);
  AnalyticalResult out;
  out.soft_adjacency = recover_adjacency(laplacian, in.degrees);
  out.graph = binarize(out.soft_adjacency, in.num_edges, in.names);
  return out;
}

}  // namespace pprei
