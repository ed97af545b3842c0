#include "pprei/proximity.hpp"

#include <cmath>
#include <istream>
#include <string>

#include "pprei/error.hpp"

namespace pprei {

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::identity: return "identity";
    case Activation::log: return "log";
    case Activation::row_l2_normalize: return "row_l2_normalize";
  }
  return "unknown";
}

ProximityConfig ProximityConfig::constant(double alpha, std::size_t horizon) {
  ProximityConfig cfg;
  cfg.horizon = horizon;
  cfg.alphas.assign(horizon + 1, alpha);
  return cfg;
}

void ProximityConfig::validate() const {
  if (alphas.size() != horizon + 1) {
    throw Error("alpha schedule has " + std::to_string(alphas.size()) + " entries, expected K+1 = " +
                std::to_string(horizon + 1));
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    // A stopping probability of exactly 1 terminates the walk and is allowed.
    if (!(alphas[i] > 0.0 && alphas[i] <= 1.0)) {
      throw Error("alpha[" + std::to_string(i) + "] = " + std::to_string(alphas[i]) +
                  " outside (0, 1]");
    }
  }
  if (k_start > horizon) throw Error("first hop k exceeds horizon K");
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  if (!(b > 0.0)) throw Error("b must be positive");
  if (!std::isfinite(beta) || !std::isfinite(gamma)) throw Error("degree exponents must be finite");
}

double ProximityConfig::scale() const {
  if (horizon == 0) throw Error("the proximity scalar b/(eps*K) needs K >= 1");
  return b / (epsilon * static_cast<double>(horizon));
}

std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::strap: return "strap";
    case Preset::approx_ppr: return "approxppr";
    case Preset::nrp_initial: return "nrp";
    case Preset::lemane: return "lemane";
    case Preset::sensei: return "sensei";
    case Preset::deepwalk_netmf: return "deepwalk";
  }
  return "unknown";
}

Preset parse_preset(std::string_view name) {
  for (Preset p : {Preset::strap, Preset::approx_ppr, Preset::nrp_initial, Preset::lemane,
                   Preset::sensei, Preset::deepwalk_netmf}) {
    if (preset_name(p) == name) return p;
  }
  throw Error("unknown preset '" + std::string(name) +
              "' (expected strap, approxppr, nrp, lemane, sensei or deepwalk)");
}

double deepwalk_log_constant(double alpha) { return -std::log(1.0 - alpha); }

ProximityConfig preset_config(Preset p, const PresetParams& params) {
  const auto k = static_cast<double>(params.horizon);
  ProximityConfig cfg = ProximityConfig::constant(params.alpha, params.horizon);
  cfg.epsilon = params.epsilon;
  switch (p) {
    case Preset::strap:
      cfg.b = 2.0 * k;
      cfg.k_start = 0;
      cfg.activation = Activation::log;
      break;
    case Preset::approx_ppr:
      cfg.b = params.epsilon * k;
      cfg.k_start = 1;
      cfg.activation = Activation::identity;
      break;
    case Preset::nrp_initial:
      cfg.b = params.epsilon * k;
      cfg.beta = 1.0;
      cfg.gamma = 1.0;
      cfg.k_start = 1;
      cfg.activation = Activation::identity;
      break;
    case Preset::lemane:
      if (!params.schedule.empty()) cfg.alphas = params.schedule;
      cfg.b = 2.0 * k;
      cfg.k_start = 0;
      cfg.activation = Activation::log;
      break;
    case Preset::sensei:
      cfg.b = params.epsilon * k;
      cfg.k_start = 0;
      cfg.activation = Activation::row_l2_normalize;
      break;
    case Preset::deepwalk_netmf:
      if (!(params.volume > 0.0)) throw Error("deepwalk preset needs the graph volume");
      cfg.b = 1.0;
      cfg.epsilon = (1.0 - params.alpha) / params.volume;
      cfg.gamma = -1.0;
      cfg.k_start = 1;
      cfg.activation = Activation::log;
      cfg.clamp = false;
      break;
  }
  cfg.validate();
  return cfg;
}

std::vector<double> hop_coefficients(const ProximityConfig& cfg) {
  cfg.validate();
  std::vector<double> c(cfg.horizon + 1, 0.0);
  double survive = 1.0;
  for (std::size_t l = 0; l <= cfg.horizon; ++l) {
    if (l >= cfg.k_start) c[l] = cfg.alphas[l] * survive;
    survive *= 1.0 - cfg.alphas[l];
  }
  return c;
}

DenseMatrix power_series(const DenseMatrix& transition, std::span<const double> coefficients) {
  if (transition.rows() != transition.cols()) throw Error("power series needs a square matrix");
  const auto n = transition.rows();
  DenseMatrix sum = DenseMatrix::Zero(n, n);
  DenseMatrix power = DenseMatrix::Identity(n, n);
  DenseMatrix next(n, n);
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (i > 0) {
      next.noalias() = power * transition;
      power.swap(next);
    }
    if (coefficients[i] != 0.0) sum += coefficients[i] * power;
  }
  return sum;
}

DenseMatrix truncated_ppr(const Graph& g, const ProximityConfig& cfg) {
  const auto coeffs = hop_coefficients(cfg);
  return power_series(transition_matrix(g), coeffs);
}

DenseMatrix build_proximity(const Graph& g, const ProximityConfig& cfg) {
  DenseMatrix m = truncated_ppr(g, cfg);
  const double scale = cfg.scale();
  const auto n = m.rows();

  Vector left = Vector::Ones(n);
  Vector right = Vector::Ones(n);
  for (Eigen::Index u = 0; u < n; ++u) {
    const auto d = static_cast<double>(g.degree(static_cast<NodeId>(u)));
    if (cfg.beta != 0.0) left(u) = std::pow(d, cfg.beta);
    if (cfg.gamma != 0.0) right(u) = std::pow(d, cfg.gamma);
  }
  m = (scale * left).asDiagonal() * m * right.asDiagonal();

  switch (cfg.activation) {
    case Activation::identity:
      break;
    case Activation::log:
      for (Eigen::Index i = 0; i < m.size(); ++i) {
        double& x = m.data()[i];
        if (x <= kLogFloor) {
          x = cfg.clamp ? 0.0 : std::log(kLogFloor) + cfg.log_offset;
        } else {
          x = std::log(x) + cfg.log_offset;
        }
      }
      break;
    case Activation::row_l2_normalize:
      for (Eigen::Index u = 0; u < n; ++u) {
        const double norm = m.row(u).norm();
        if (norm > 0.0) m.row(u) /= norm;
      }
      break;
  }
  if (cfg.clamp) m = m.cwiseMax(0.0);
  return m;
}

std::vector<double> parse_alpha_schedule(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line.substr(pos), &used);
    } catch (const std::exception&) {
      throw ParseError("expected a real number", line_no);
    }
    if (line.find_first_not_of(" \t\r", pos + used) != std::string::npos) {
      throw ParseError("expected a single real number per line", line_no);
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("alpha schedule is empty", 0);
  return out;
}

}  // namespace pprei
