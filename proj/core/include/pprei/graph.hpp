#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pprei/linalg.hpp"

namespace pprei {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Maps external node names (as they appear in input files) to the dense
/// internal index space 0..n-1.
class NodeNames {
 public:
  NodeNames() = default;
  explicit NodeNames(std::vector<std::string> names);

  /// Names "0", "1", ..., "n-1".
  static std::shared_ptr<const NodeNames> identity(std::size_t n);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(NodeId id) const { return names_.at(id); }
  std::optional<NodeId> find(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

/// Immutable simple undirected graph in CSR form.  Both orientations of every
/// edge are stored; neighbor lists are sorted.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list over nodes 0..n-1.  Duplicate edges
  /// (in either orientation) collapse.  Self-loops and out-of-range ids throw.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::shared_ptr<const NodeNames> names = nullptr);

  std::size_t num_nodes() const noexcept { return degrees_.size(); }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }
  /// Sum of all adjacency entries, 2m.
  std::size_t volume() const noexcept { return targets_.size(); }

  std::size_t degree(NodeId u) const { return degrees_.at(u); }
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
  std::vector<double> degree_vector() const;

  std::span<const NodeId> neighbors(NodeId u) const;
  bool has_edge(NodeId u, NodeId v) const;

  /// Canonical edge set: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  const NodeNames& names() const { return *names_; }
  std::shared_ptr<const NodeNames> shared_names() const { return names_; }

  /// Dense 0/1 adjacency matrix.
  DenseMatrix adjacency() const;

  /// First isolated node, if any.
  std::optional<NodeId> find_isolated() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<std::size_t> degrees_;
  std::shared_ptr<const NodeNames> names_ = std::make_shared<NodeNames>();
};

struct EdgeListStats {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
};

struct ParsedGraph {
  Graph graph;
  EdgeListStats stats;
};

/// Reads a whitespace-separated edge list.  Lines that are empty or start
/// with '#' are skipped.  Node names remap to 0..n-1 in first-seen order.
/// Nodes left without any edge after dropping self-loops are rejected.
ParsedGraph parse_edge_list(std::istream& in);

/// Like parse_edge_list, but resolves names against an existing name table
/// so the result shares the reference's index space.  Unknown names throw;
/// nodes without edges are allowed.
ParsedGraph parse_edge_list(std::istream& in, std::shared_ptr<const NodeNames> reference);

ParsedGraph read_edge_list(const std::filesystem::path& path);
ParsedGraph read_edge_list(const std::filesystem::path& path,
                           std::shared_ptr<const NodeNames> reference);

/// Writes the canonical edge set using the graph's node names.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

struct Community {
  std::string label;
  std::vector<NodeId> nodes;
};

/// Partition of the nodes into labelled communities.  `communities()` is
/// ordered by size descending, ties by smaller label id.
class CommunityAssignment {
 public:
  CommunityAssignment(std::vector<std::size_t> node_community,
                      std::vector<Community> communities);

  std::size_t num_nodes() const noexcept { return node_community_.size(); }
  const std::vector<Community>& communities() const noexcept { return communities_; }
  /// Index into communities() for node u.
  std::size_t community_of(NodeId u) const { return node_community_.at(u); }

 private:
  std::vector<std::size_t> node_community_;
  std::vector<Community> communities_;
};

/// Reads "node label" lines.  A leading "node label" header line is skipped.
CommunityAssignment parse_labels(std::istream& in, const Graph& g);
CommunityAssignment read_labels(const std::filesystem::path& path, const Graph& g);

/// Builds an assignment from per-node label strings.
CommunityAssignment make_communities(std::span<const std::string> labels);

/// Row-stochastic D^{-1}A.  Throws if any node is isolated.
DenseMatrix transition_matrix(const Graph& g);

/// Hop distances between every ordered pair (BFS from each source).
class DistanceTable {
 public:
  static constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

  explicit DistanceTable(std::size_t n) : n_(n), data_(n * n, kUnreachable) {}

  std::size_t size() const noexcept { return n_; }
  std::uint32_t operator()(NodeId u, NodeId v) const { return data_[u * n_ + v]; }
  std::uint32_t& at(NodeId u, NodeId v) { return data_[u * n_ + v]; }
  bool reachable(NodeId u, NodeId v) const { return (*this)(u, v) != kUnreachable; }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> data_;
};

DistanceTable all_pairs_distances(const Graph& g);

struct CutMeasure {
  std::size_t cut = 0;
  std::size_t volume_inside = 0;
  std::size_t volume_outside = 0;
};

/// Cut edges and both side volumes for node set `s`.  Throws on duplicate or
/// out-of-range nodes.
CutMeasure cut_measure(const Graph& g, std::span<const NodeId> s);

/// cut(S, V\S) / min(vol(S), vol(V\S)).  Throws if S is empty, equals V, or
/// the denominator is zero.
double conductance(const Graph& g, std::span<const NodeId> s);

}  // namespace pprei
