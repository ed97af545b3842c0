#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "pprei/graph.hpp"
#include "pprei/linalg.hpp"

namespace pprei {

enum class Activation { identity, log, row_l2_normalize };

std::string_view activation_name(Activation a);

/// Parameters of the unified K-hop proximity
///
///   M_K = max{0, f((b / (eps*K)) * D^beta * (sum_{i=k}^{K} c_i P^i) * D^gamma) + offset}
///
/// where c_i are the hop coefficients derived from the stopping-probability
/// schedule.  `clamp` turns the outer max off for forms that are defined
/// without it.
struct ProximityConfig {
  double b = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::size_t k_start = 0;
  std::size_t horizon = 10;
  std::vector<double> alphas;  // horizon + 1 entries
  double epsilon = 1e-7;
  Activation activation = Activation::log;
  bool clamp = true;
  double log_offset = 0.0;

  /// Fills the schedule with a constant alpha.
  static ProximityConfig constant(double alpha, std::size_t horizon);

  /// Throws on any violated invariant.
  void validate() const;
  /// b / (epsilon * K).
  double scale() const;
};

enum class Preset { strap, approx_ppr, nrp_initial, lemane, sensei, deepwalk_netmf };

/// CLI spelling: strap, approxppr, nrp, lemane, sensei, deepwalk.
std::string_view preset_name(Preset p);
Preset parse_preset(std::string_view name);

struct PresetParams {
  double alpha = 0.7;
  double epsilon = 1e-7;
  std::size_t horizon = 10;
  /// vol(G); used only by deepwalk_netmf (epsilon = (1 - alpha) / vol).
  double volume = 0.0;
  /// Per-hop stopping probabilities for lemane; constant alpha if empty.
  std::vector<double> schedule;
};

ProximityConfig preset_config(Preset p, const PresetParams& params);

/// -log(1 - alpha): the constant that the random-walk DeepWalk proximity carries
/// outside the log.  With epsilon = (1 - alpha)/vol it is already part of
/// scale(), so deepwalk_netmf keeps log_offset at zero.
double deepwalk_log_constant(double alpha);

/// c_0 = alpha_0, c_l = alpha_l * prod_{j<l} (1 - alpha_j); hops below
/// k_start are zero.
std::vector<double> hop_coefficients(const ProximityConfig& cfg);

/// sum_i coefficients[i] * transition^i, accumulated as Q <- Q * transition.
DenseMatrix power_series(const DenseMatrix& transition, std::span<const double> coefficients);

/// sum_{i=k}^{K} c_i P^i for the graph's transition matrix.
DenseMatrix truncated_ppr(const Graph& g, const ProximityConfig& cfg);

/// Full unified proximity matrix for g.
DenseMatrix build_proximity(const Graph& g, const ProximityConfig& cfg);

/// Entries at or below this value are treated as zero before a log.
inline constexpr double kLogFloor = 1e-300;

/// One real per line ('#' comments allowed).
std::vector<double> parse_alpha_schedule(std::istream& in);

}  // namespace pprei
