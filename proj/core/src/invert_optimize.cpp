#include "pprei/invert_optimize.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "pprei/error.hpp"
#include "pprei/invert_analytical.hpp"

namespace pprei {
namespace {

constexpr double kRowSumFloor = 1e-12;

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Off-diagonal sum of sigma(logits + s) and its derivative in s.
std::pair<double, double> mass_and_slope(const DenseMatrix& logits, double s) {
  double mass = 0.0;
  double slope = 0.0;
  const auto n = logits.rows();
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      if (u == v) continue;
      const double b = sigmoid(logits(u, v) + s);
      mass += b;
      slope += b * (1.0 - b);
    }
  }
  return {mass, slope};
}

}  // namespace

ForwardForm ForwardForm::standard(double alpha, double epsilon, std::size_t horizon) {
  ProximityConfig cfg = ProximityConfig::constant(alpha, horizon);
  cfg.epsilon = epsilon;
  cfg.b = static_cast<double>(horizon);
  return from_config(cfg);
}

ForwardForm ForwardForm::from_config(const ProximityConfig& cfg) {
  if (cfg.activation == Activation::row_l2_normalize) {
    throw Error("the optimizer cannot invert a row-normalized proximity");
  }
  ForwardForm f;
  f.coefficients = hop_coefficients(cfg);
  f.scale = cfg.scale();
  f.beta = cfg.beta;
  f.gamma = cfg.gamma;
  f.activation = cfg.activation;
  f.clamp = cfg.clamp;
  f.log_offset = cfg.log_offset;
  return f;
}

void ForwardForm::validate() const {
  if (coefficients.empty()) throw Error("forward form needs at least one hop coefficient");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error("forward scale must be positive");
  if (activation == Activation::row_l2_normalize) {
    throw Error("the optimizer cannot invert a row-normalized proximity");
  }
  if (!std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(log_offset)) {
    throw Error("forward form parameters must be finite");
  }
}

ForwardPass forward_proximity(const DenseMatrix& b, const ForwardForm& form) {
  form.validate();
  if (b.rows() != b.cols()) throw Error("soft adjacency must be square");
  const auto n = b.rows();

  ForwardPass pass;
  pass.row_sums = b.rowwise().sum();
  for (Eigen::Index u = 0; u < n; ++u) {
    if (!(pass.row_sums(u) > 0.0)) {
      throw Error("row " + std::to_string(u) + " of the soft adjacency sums to zero");
    }
    pass.row_sums(u) = std::max(pass.row_sums(u), kRowSumFloor);
  }
  pass.transition = pass.row_sums.cwiseInverse().asDiagonal() * b;

  const std::size_t k = form.coefficients.size() - 1;
  pass.horner.resize(k + 1);
  pass.horner[k] = form.coefficients[k] * DenseMatrix::Identity(n, n);
  for (std::size_t i = k; i-- > 0;) {
    pass.horner[i].noalias() = pass.transition * pass.horner[i + 1];
    pass.horner[i].diagonal().array() += form.coefficients[i];
  }

  Vector left = Vector::Constant(n, form.scale);
  Vector right = Vector::Ones(n);
  if (form.beta != 0.0) left.array() *= pass.row_sums.array().pow(form.beta);
  if (form.gamma != 0.0) right = pass.row_sums.array().pow(form.gamma).matrix();
  pass.pre_activation = left.asDiagonal() * pass.horner[0] * right.asDiagonal();

  pass.output = pass.pre_activation;
  if (form.activation == Activation::log) {
    for (Eigen::Index i = 0; i < pass.output.size(); ++i) {
      double& x = pass.output.data()[i];
      if (x <= kLogFloor) {
        x = form.clamp ? 0.0 : std::log(kLogFloor) + form.log_offset;
      } else {
        x = std::log(x) + form.log_offset;
      }
    }
  }
  if (form.clamp) pass.output = pass.output.cwiseMax(0.0);
  return pass;
}

double loss(const DenseMatrix& m_hat, const DenseMatrix& target) {
  if (m_hat.rows() != target.rows() || m_hat.cols() != target.cols()) {
    throw Error("loss needs matrices of equal shape");
  }
  return (m_hat - target).squaredNorm();
}

DenseMatrix shifted_logistic(const DenseMatrix& logits, double shift) {
  DenseMatrix b = logits.unaryExpr([shift](double x) { return sigmoid(x + shift); });
  b.diagonal().setZero();
  return b;
}

double volume_shift(const DenseMatrix& logits, double target_volume, std::size_t iterations) {
  if (logits.rows() != logits.cols()) throw Error("logits must be square");
  const auto n = static_cast<double>(logits.rows());
  const double capacity = n * (n - 1.0);
  if (!(target_volume > 0.0 && target_volume < capacity)) {
    throw Error("target volume " + std::to_string(target_volume) + " outside (0, " +
                std::to_string(capacity) + ")");
  }
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto [mass, slope] = mass_and_slope(logits, s);
    const double residual = target_volume - mass;
    if (residual == 0.0) break;
    if (residual > 0.0) {
      lo = s;
    } else {
      hi = s;
    }
    // Newton on log mass (log complement mass for upper-half targets): same
    // root, but the saturated tails become near-linear so steps stay in range.
    double next = 0.0;
    if (target_volume <= 0.5 * capacity) {
      next = s + std::log(target_volume / mass) * mass / slope;
    } else {
      const double rest = capacity - mass;
      next = s + std::log(rest / (capacity - target_volume)) * rest / slope;
    }
    if (!std::isfinite(next) || !(next > lo && next < hi)) {
      if (std::isfinite(lo) && std::isfinite(hi)) {
        next = 0.5 * (lo + hi);
      } else {
        const double reach = std::max(1.0, 2.0 * std::abs(s));
        next = residual > 0.0 ? s + reach : s - reach;
      }
    }
    s = next;
  }
  return s;
}

DenseMatrix gradient(const ForwardPass& pass, const DenseMatrix& b, const DenseMatrix& target,
                     const ForwardForm& form) {
  const auto n = b.rows();
  if (target.rows() != n || target.cols() != n) throw Error("target shape does not match B");

  DenseMatrix g_n = 2.0 * (pass.output - target);
  for (Eigen::Index i = 0; i < g_n.size(); ++i) {
    const double pre = pass.pre_activation.data()[i];
    double& g = g_n.data()[i];
    if (form.activation == Activation::log) {
      if (pre <= kLogFloor || (form.clamp && std::log(pre) + form.log_offset <= 0.0)) {
        g = 0.0;
      } else {
        g /= pre;
      }
    } else if (form.clamp && pre <= 0.0) {
      g = 0.0;
    }
  }

  const Vector& r = pass.row_sums;
  Vector left = Vector::Constant(n, form.scale);
  Vector right = Vector::Ones(n);
  if (form.beta != 0.0) left.array() *= r.array().pow(form.beta);
  if (form.gamma != 0.0) right = r.array().pow(form.gamma).matrix();

  Vector g_r = Vector::Zero(n);
  if (form.beta != 0.0 || form.gamma != 0.0) {
    const DenseMatrix weighted = g_n.cwiseProduct(pass.pre_activation);
    if (form.beta != 0.0) g_r += form.beta * weighted.rowwise().sum().cwiseQuotient(r);
    if (form.gamma != 0.0) {
      g_r += form.gamma * weighted.colwise().sum().transpose().cwiseQuotient(r);
    }
  }

  DenseMatrix g_h = left.asDiagonal() * g_n * right.asDiagonal();
  DenseMatrix g_t = DenseMatrix::Zero(n, n);
  DenseMatrix next(n, n);
  const std::size_t k = pass.horner.size() - 1;
  for (std::size_t i = 0; i < k; ++i) {
    g_t.noalias() += g_h * pass.horner[i + 1].transpose();
    if (i + 1 < k) {
      next.noalias() = pass.transition.transpose() * g_h;
      g_h.swap(next);
    }
  }

  const Vector row_dot = g_t.cwiseProduct(pass.transition).rowwise().sum();
  DenseMatrix g_b = (g_t.colwise() - row_dot);
  g_b = r.cwiseInverse().asDiagonal() * g_b;
  g_b.colwise() += g_r;

  DenseMatrix g_logit = b.cwiseProduct((1.0 - b.array()).matrix()).cwiseProduct(g_b);
  DenseMatrix grad = g_logit + g_logit.transpose();
  grad.diagonal().setZero();
  return grad;
}

void OptConfig::validate() const {
  if (epochs < 1) throw Error("epochs p must be at least 1");
  if (newton_iters < 1) throw Error("newton iterations q must be at least 1");
  if (!(step_size > 0.0)) throw Error("step size must be positive");
  if (optimizer == Optimizer::adam) {
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
      throw Error("moment decay rates must lie in [0, 1)");
    }
    if (!(adam_epsilon > 0.0)) throw Error("adam epsilon must be positive");
  }
  if (!(init_scale >= 0.0)) throw Error("init scale must be non-negative");
  form.validate();
}

OptResult invert_optimize(const DenseMatrix& target, const OptConfig& cfg, std::size_t num_edges,
                          std::shared_ptr<const NodeNames> names) {
  cfg.validate();
  if (target.rows() != target.cols()) throw Error("target proximity must be square");
  const auto n = target.rows();
  const double volume =
      cfg.target_volume > 0.0 ? cfg.target_volume : 2.0 * static_cast<double>(num_edges);

  DenseMatrix logits = DenseMatrix::Zero(n, n);
  if (cfg.init_scale > 0.0) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> noise(0.0, cfg.init_scale);
    for (Eigen::Index u = 0; u < n; ++u) {
      for (Eigen::Index v = u + 1; v < n; ++v) logits(u, v) = logits(v, u) = noise(rng);
    }
  }

  DenseMatrix m1 = DenseMatrix::Zero(n, n);
  DenseMatrix m2 = DenseMatrix::Zero(n, n);
  double decay1 = 1.0;
  double decay2 = 1.0;

  OptResult out;
  out.loss_trace.reserve(cfg.epochs);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double s = volume_shift(logits, volume, cfg.newton_iters);
    const DenseMatrix b = shifted_logistic(logits, s);
    const ForwardPass pass = forward_proximity(b, cfg.form);
    out.loss_trace.push_back(loss(pass.output, target));
    const DenseMatrix g = gradient(pass, b, target, cfg.form);

    if (cfg.optimizer == Optimizer::gradient_descent) {
      logits -= cfg.step_size * g;
    } else {
      decay1 *= cfg.beta1;
      decay2 *= cfg.beta2;
      m1 = cfg.beta1 * m1 + (1.0 - cfg.beta1) * g;
      m2 = cfg.beta2 * m2 + (1.0 - cfg.beta2) * g.cwiseAbs2();
      const double c1 = 1.0 / (1.0 - decay1);
      const double c2 = 1.0 / (1.0 - decay2);
      logits.array() -= cfg.step_size * (c1 * m1.array()) /
                        ((c2 * m2.array()).sqrt() + cfg.adam_epsilon);
    }
    logits.diagonal().setZero();
  }

  const double s = volume_shift(logits, volume, cfg.newton_iters);
  out.soft_adjacency = shifted_logistic(logits, s);
  out.final_loss = loss(forward_proximity(out.soft_adjacency, cfg.form).output, target);
  out.graph = binarize(out.soft_adjacency, num_edges, std::move(names));
  return out;
}

}  // namespace pprei
