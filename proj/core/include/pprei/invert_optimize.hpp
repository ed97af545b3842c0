#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "pprei/graph.hpp"
#include "pprei/linalg.hpp"
#include "pprei/proximity.hpp"

namespace pprei {

/// Proximity recomputed from a soft adjacency B:
///
///   T = diag(r)^{-1} B,  r = row sums of B
///   S = sum_i c_i T^i               (Horner)
///   N = scale * diag(r)^beta * S * diag(r)^gamma
///   M = max{0, log(N) + log_offset} (or identity, or unclamped)
struct ForwardForm {
  std::vector<double> coefficients;
  double scale = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  Activation activation = Activation::log;
  bool clamp = true;
  double log_offset = 0.0;

  /// b = K, beta = gamma = 0, k = 0, f = log: scale 1/epsilon.
  static ForwardForm standard(double alpha, double epsilon, std::size_t horizon);

  /// The form that reproduces build_proximity(cfg) when B is an adjacency
  /// matrix.  Row-L2 activation is not supported.
  static ForwardForm from_config(const ProximityConfig& cfg);

  void validate() const;
};

/// Forward intermediates retained for the backward pass.
struct ForwardPass {
  DenseMatrix transition;
  Vector row_sums;
  std::vector<DenseMatrix> horner;  // H_0 .. H_K, H_0 = S
  DenseMatrix pre_activation;       // N
  DenseMatrix output;               // M
};

/// Throws if any row of B sums to zero.
ForwardPass forward_proximity(const DenseMatrix& soft_adjacency, const ForwardForm& form);

/// Squared Frobenius distance.
double loss(const DenseMatrix& m_hat, const DenseMatrix& target);

/// Elementwise logistic of logits + shift with the diagonal forced to zero.
DenseMatrix shifted_logistic(const DenseMatrix& logits, double shift);

/// Shift s such that the off-diagonal entries of sigma(logits + s) sum to
/// target_volume, by `iterations` Newton steps from s = 0 on the log of the
/// mass (or of the complement mass when the target is above half capacity).
/// Steps that leave the bracket established by the monotone residual fall
/// back to bisection.
double volume_shift(const DenseMatrix& logits, double target_volume, std::size_t iterations);

/// dL/dlogits for the shared symmetric parameters (u,v)=(v,u), with the
/// shift held fixed.  `soft_adjacency` is the B used for `pass`.
DenseMatrix gradient(const ForwardPass& pass, const DenseMatrix& soft_adjacency,
                     const DenseMatrix& target, const ForwardForm& form);

enum class Optimizer { adam, gradient_descent };

struct OptConfig {
  std::size_t epochs = 40;
  std::size_t newton_iters = 10;
  double step_size = 0.3;
  Optimizer optimizer = Optimizer::adam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double target_volume = 0.0;
  ForwardForm form;
  std::uint64_t seed = 0;
  /// Standard deviation of seeded Gaussian noise added to the zero initial
  /// logits; 0 keeps the all-zero start.
  double init_scale = 0.0;

  void validate() const;
};

struct OptResult {
  Graph graph;
  DenseMatrix soft_adjacency;
  std::vector<double> loss_trace;  // loss before each epoch's update
  double final_loss = 0.0;         // loss at the returned soft adjacency
};

OptResult invert_optimize(const DenseMatrix& target, const OptConfig& cfg, std::size_t num_edges,
                          std::shared_ptr<const NodeNames> names = nullptr);

}  // namespace pprei
