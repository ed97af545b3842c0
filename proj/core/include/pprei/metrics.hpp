#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pprei/graph.hpp"

namespace pprei {

/// ||A - A_hat||_F / ||A||_F for binary graphs over the same node set.
double relative_frobenius_error(const Graph& a, const Graph& a_hat);

struct PathLengthSummary {
  double mean = 0.0;                 // over unordered connected pairs; 0 if none
  std::size_t connected_pairs = 0;
};

PathLengthSummary average_path_length(const Graph& g);

struct PathLengthComparison {
  double error = 0.0;
  PathLengthSummary original;
  PathLengthSummary recovered;
};

PathLengthComparison compare_path_lengths(const Graph& g, const Graph& g_hat);
/// |l(G) - l(G_hat)| / l(G).
double relative_path_length_error(const Graph& g, const Graph& g_hat);

/// |phi_G(S) - phi_Ghat(S)| / phi_G(S).  phi_Ghat is 0 when S has no volume on
/// either side in G_hat.  Throws if phi_G(S) is zero.
double relative_conductance_error(const Graph& g, const Graph& g_hat, std::span<const NodeId> s);

struct CommunityError {
  std::string label;
  std::size_t size = 0;
  double phi_orig = 0.0;
  double phi_rec = 0.0;
  std::optional<double> rel_err;   // empty when excluded
  bool excluded = false;
};

struct RecoveryReport {
  double err_a = 0.0;
  double err_l = 0.0;
  std::optional<double> err_phi_avg;
  std::vector<CommunityError> per_community;
  bool conductance_available = false;
  std::size_t connected_pairs_orig = 0;
  std::size_t connected_pairs_rec = 0;
  nlohmann::json meta = nlohmann::json::object();
};

inline constexpr std::size_t kReportedCommunities = 4;

/// All three metrics.  Without labels the conductance section is omitted.
RecoveryReport recovery_report(const Graph& g, const Graph& g_hat,
                               const CommunityAssignment* labels,
                               nlohmann::json meta = nlohmann::json::object());

nlohmann::json to_json(const RecoveryReport& r);

}  // namespace pprei
