#include "pprei/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "pprei/error.hpp"

namespace pprei {
namespace {

void require_same_size(const Graph& a, const Graph& b) {
  if (a.num_nodes() != b.num_nodes()) {
    throw Error("graphs have different node counts (" + std::to_string(a.num_nodes()) + " vs " +
                std::to_string(b.num_nodes()) + ")");
  }
}

// Conductance that reads as 0 when either side of the cut carries no volume.
double conductance_or_zero(const Graph& g, std::span<const NodeId> s) {
  const CutMeasure c = cut_measure(g, s);
  const std::size_t denom = std::min(c.volume_inside, c.volume_outside);
  if (denom == 0) return 0.0;
  return static_cast<double>(c.cut) / static_cast<double>(denom);
}

}  // namespace

double relative_frobenius_error(const Graph& a, const Graph& a_hat) {
  require_same_size(a, a_hat);
  if (a.num_edges() == 0) throw Error("relative error undefined for a graph without edges");
  const auto ea = a.edges();
  const auto eb = a_hat.edges();
  std::vector<Edge> diff;
  std::set_symmetric_difference(ea.begin(), ea.end(), eb.begin(), eb.end(),
                                std::back_inserter(diff));
  return std::sqrt(static_cast<double>(diff.size()) / static_cast<double>(a.num_edges()));
}

PathLengthSummary average_path_length(const Graph& g) {
  const DistanceTable dist = all_pairs_distances(g);
  const auto n = static_cast<NodeId>(g.num_nodes());
  PathLengthSummary out;
  double total = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (!dist.reachable(u, v)) continue;
      total += dist(u, v);
      ++out.connected_pairs;
    }
  }
  if (out.connected_pairs > 0) out.mean = total / static_cast<double>(out.connected_pairs);
  return out;
}

PathLengthComparison compare_path_lengths(const Graph& g, const Graph& g_hat) {
  require_same_size(g, g_hat);
  PathLengthComparison out;
  out.original = average_path_length(g);
  if (out.original.connected_pairs == 0) {
    throw Error("original graph has no connected pair; path length error undefined");
  }
  out.recovered = average_path_length(g_hat);
  out.error = std::abs(out.original.mean - out.recovered.mean) / out.original.mean;
  return out;
}

double relative_path_length_error(const Graph& g, const Graph& g_hat) {
  return compare_path_lengths(g, g_hat).error;
}

double relative_conductance_error(const Graph& g, const Graph& g_hat, std::span<const NodeId> s) {
  require_same_size(g, g_hat);
  const double phi = conductance(g, s);
  if (phi == 0.0) throw Error("original conductance is zero; relative error undefined");
  return std::abs(phi - conductance_or_zero(g_hat, s)) / phi;
}

RecoveryReport recovery_report(const Graph& g, const Graph& g_hat,
                               const CommunityAssignment* labels, nlohmann::json meta) {
  require_same_size(g, g_hat);
  RecoveryReport r;
  r.err_a = relative_frobenius_error(g, g_hat);
  const PathLengthComparison paths = compare_path_lengths(g, g_hat);
  r.err_l = paths.error;
  r.connected_pairs_orig = paths.original.connected_pairs;
  r.connected_pairs_rec = paths.recovered.connected_pairs;
  r.meta = std::move(meta);

  if (labels == nullptr) return r;
  if (labels->num_nodes() != g.num_nodes()) {
    throw Error("labels cover " + std::to_string(labels->num_nodes()) + " nodes, graph has " +
                std::to_string(g.num_nodes()));
  }
  r.conductance_available = true;
  const auto& comms = labels->communities();
  const std::size_t count = std::min(kReportedCommunities, comms.size());
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Community& c = comms[i];
    CommunityError e;
    e.label = c.label;
    e.size = c.nodes.size();
    const CutMeasure cut = cut_measure(g, c.nodes);
    const std::size_t denom = std::min(cut.volume_inside, cut.volume_outside);
    e.phi_rec = conductance_or_zero(g_hat, c.nodes);
    if (denom == 0 || cut.cut == 0) {
      e.excluded = true;
      e.phi_orig = 0.0;
    } else {
      e.phi_orig = static_cast<double>(cut.cut) / static_cast<double>(denom);
      e.rel_err = std::abs(e.phi_orig - e.phi_rec) / e.phi_orig;
      sum += *e.rel_err;
      ++used;
    }
    r.per_community.push_back(std::move(e));
  }
  if (used > 0) r.err_phi_avg = sum / static_cast<double>(used);
  return r;
}

nlohmann::json to_json(const RecoveryReport& r) {
  nlohmann::json j;
  j["err_A"] = r.err_a;
  j["err_l"] = r.err_l;
  j["conductance_available"] = r.conductance_available;
  if (r.conductance_available) {
    j["err_phi_avg"] = r.err_phi_avg ? nlohmann::json(*r.err_phi_avg) : nlohmann::json(nullptr);
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : r.per_community) {
      list.push_back({
          {"label", c.label},
          {"size", c.size},
          {"phi_orig", c.phi_orig},
          {"phi_rec", c.phi_rec},
          {"rel_err", c.rel_err ? nlohmann::json(*c.rel_err) : nlohmann::json(nullptr)},
          {"excluded", c.excluded},
      });
    }
    j["per_community"] = std::move(list);
  }
  j["connected_pairs_orig"] = r.connected_pairs_orig;
  j["connected_pairs_rec"] = r.connected_pairs_rec;
  j["meta"] = r.meta;
  return j;
}

}  // namespace pprei
