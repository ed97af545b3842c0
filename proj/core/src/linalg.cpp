#include "pprei/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "pprei/error.hpp"

namespace pprei {

namespace {

using ColMatrix = Eigen::MatrixXd;

std::string shape(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Orthonormal basis for the column space of y (thin Householder Q).
ColMatrix orthonormalize(const ColMatrix& y) {
  Eigen::HouseholderQR<ColMatrix> qr(y);
  return qr.householderQ() * ColMatrix::Identity(y.rows(), y.cols());
}

}  // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error("matmul dimension mismatch: " + shape(a) + " * " + shape(b));
  }
  DenseMatrix out(a.rows(), b.cols());
  out.noalias() = a * b;
  return out;
}

bool is_symmetric(const DenseMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    }
  }
  return true;
}

DenseMatrix symmetrized(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw Error("cannot symmetrize a " + shape(m) + " matrix");
  return 0.5 * (m + m.transpose());
}

DenseMatrix SvdResult::reconstruct() const {
  return u * sigma.asDiagonal() * v.transpose();
}

SvdResult randomized_svd(const DenseMatrix& m, std::size_t d, std::uint64_t seed,
                         RandomizedSvdOptions options) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  const std::size_t full = std::min(rows, cols);
  if (d < 1 || d > full) {
    throw Error("rank " + std::to_string(d) + " out of range [1, " + std::to_string(full) +
                "] for a " + shape(m) + " matrix");
  }
  const auto width = static_cast<Eigen::Index>(std::min(d + options.oversampling, full));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ColMatrix omega(m.cols(), width);
  for (Eigen::Index j = 0; j < omega.cols(); ++j) {
    for (Eigen::Index i = 0; i < omega.rows(); ++i) omega(i, j) = normal(rng);
  }

  const ColMatrix a = m;
  ColMatrix q = orthonormalize(a * omega);
  for (std::size_t it = 0; it < options.power_iterations; ++it) {
    ColMatrix z = orthonormalize(a.transpose() * q);
    q = orthonormalize(a * z);
  }

  const ColMatrix small = q.transpose() * a;
  Eigen::BDCSVD<ColMatrix> svd(small, Eigen::ComputeThinU | Eigen::ComputeThinV);

  const auto k = static_cast<Eigen::Index>(d);
  SvdResult out;
  out.u = q * svd.matrixU().leftCols(k);
  out.sigma = svd.singularValues().head(k);
  out.v = svd.matrixV().leftCols(k);

  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::Index arg = 0;
    out.u.col(j).cwiseAbs().maxCoeff(&arg);
    if (out.u(arg, j) < 0.0) {
      out.u.col(j) *= -1.0;
      out.v.col(j) *= -1.0;
    }
  }
  return out;
}

DenseMatrix pseudoinverse(const DenseMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw Error("pseudoinverse needs a square matrix, got " + shape(m));
  const double magnitude = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!is_symmetric(m, 1e-10 * magnitude)) {
    throw Error("pseudoinverse needs a symmetric matrix");
  }
  if (m.size() == 0) return m;

  const ColMatrix sym = m;
  Eigen::SelfAdjointEigenSolver<ColMatrix> eig(sym);
  if (eig.info() != Eigen::Success) throw Error("symmetric eigendecomposition failed");

  const Vector& lambda = eig.eigenvalues();
  const double largest = lambda.cwiseAbs().maxCoeff();
  Vector inv(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    inv(i) = (largest > 0.0 && std::abs(lambda(i)) > tol * largest) ? 1.0 / lambda(i) : 0.0;
  }
  const ColMatrix& vecs = eig.eigenvectors();
  DenseMatrix out = vecs * inv.asDiagonal() * vecs.transpose();
  return out;
}

}  // namespace pprei
