#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "pprei/graph.hpp"
#include "pprei/linalg.hpp"

namespace pprei {

/// Inputs of the closed-form inversion.  `proximity` must follow the
/// DeepWalk form log((vol/((1-alpha)K)) * sum_{i=1}^{K} alpha(1-alpha)^i P^i D^{-1})
/// without clamping.
struct AnalyticalInputs {
  DenseMatrix proximity;
  std::vector<double> degrees;
  double volume = 0.0;
  double alpha = 0.7;
  std::size_t horizon = 0;
  std::size_t num_edges = 0;
  std::shared_ptr<const NodeNames> names;  // optional

  void validate() const;
};

/// M_inf = K * exp(M_K) - J.
DenseMatrix estimate_m_infinity(const DenseMatrix& proximity, std::size_t horizon);

/// Normalized Laplacian from M_inf:
///   Z = I + (1-alpha)/(alpha vol) * D^{1/2} (M_inf + J) D^{1/2}
///   L = (Z^+ - alpha I) / (1 - alpha)
/// symmetrized before and after the pseudoinverse.
DenseMatrix recover_laplacian(const DenseMatrix& m_inf, std::span<const double> degrees,
                              double volume, double alpha, double pinv_tol = 1e-10);

/// D^{1/2} (I - L) D^{1/2}.
DenseMatrix recover_adjacency(const DenseMatrix& laplacian, std::span<const double> degrees);

/// Keeps the m largest strictly-upper-triangular entries as edges.  Ties go to
/// the lexicographically smaller (row, col).  NaN entries rank last.
Graph binarize(const DenseMatrix& soft, std::size_t num_edges,
               std::shared_ptr<const NodeNames> names = nullptr);

struct AnalyticalResult {
  DenseMatrix soft_adjacency;
  Graph graph;
};

AnalyticalResult invert_analytical(const AnalyticalInputs& in);

}  // namespace pprei
