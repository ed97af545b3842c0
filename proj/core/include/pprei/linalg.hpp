#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace pprei {

/// Row-major dense matrix of doubles.  Every proximity, embedding and
/// inversion quantity lives in one of these.
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// a * b.  Throws on inner-dimension mismatch.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

bool is_symmetric(const DenseMatrix& m, double tol);

/// (m + m^T) / 2.
DenseMatrix symmetrized(const DenseMatrix& m);

struct SvdResult {
  DenseMatrix u;     // rows x d, orthonormal columns
  Vector sigma;      // d values, non-increasing
  DenseMatrix v;     // cols x d, orthonormal columns

  std::size_t rank() const noexcept { return static_cast<std::size_t>(sigma.size()); }
  /// u * diag(sigma) * v^T
  DenseMatrix reconstruct() const;
};

struct RandomizedSvdOptions {
  std::size_t oversampling = 10;
  std::size_t power_iterations = 2;
};

/// Rank-d truncated SVD by Gaussian range finding with power iterations.
/// The sketch width is min(d + oversampling, min(rows, cols)), so d equal to
/// the full dimension yields an exact decomposition.  Deterministic for a
/// fixed seed; singular vector signs are normalized so the largest-magnitude
/// entry of each left vector is positive.
SvdResult randomized_svd(const DenseMatrix& m, std::size_t d, std::uint64_t seed,
                         RandomizedSvdOptions options = {});

/// Moore-Penrose pseudoinverse of a symmetric matrix through its
/// eigendecomposition.  Eigenvalues with |lambda| <= tol * max|lambda| are
/// treated as zero.  Throws if m is not square or not symmetric (1e-10
/// relative to its largest entry).
DenseMatrix pseudoinverse(const DenseMatrix& m, double tol = 1e-10);

}  // namespace pprei
