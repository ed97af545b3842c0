#include "pprei/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "pprei/error.hpp"

namespace pprei {

NodeNames::NodeNames(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<NodeId>(i)).second) {
      throw Error("duplicate node name '" + names_[i] + "'");
    }
  }
}

std::shared_ptr<const NodeNames> NodeNames::identity(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  return std::make_shared<const NodeNames>(std::move(names));
}

std::optional<NodeId> NodeNames::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::shared_ptr<const NodeNames> names) {
  if (names == nullptr) {
    names = NodeNames::identity(n);
  } else if (names->size() != n) {
    throw Error("name table has " + std::to_string(names->size()) + " entries for " +
                std::to_string(n) + " nodes");
  }

  std::vector<Edge> both;
  both.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                  ") out of range for " + std::to_string(n) + " nodes");
    }
    if (e.u == e.v) throw Error("self-loop at node " + std::to_string(e.u));
    both.push_back({e.u, e.v});
    both.push_back({e.v, e.u});
  }
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());

  Graph g;
  g.names_ = std::move(names);
  g.degrees_.assign(n, 0);
  for (const Edge& e : both) ++g.degrees_[e.u];
  g.offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) g.offsets_[u + 1] = g.offsets_[u] + g.degrees_[u];
  g.targets_.reserve(both.size());
  for (const Edge& e : both) g.targets_.push_back(e.v);
  return g;
}

std::vector<double> Graph::degree_vector() const {
  return {degrees_.begin(), degrees_.end()};
}

std::span<const NodeId> Graph::neighbors(NodeId u) const {
  if (u >= num_nodes()) throw Error("node " + std::to_string(u) + " out of range");
  return {targets_.data() + offsets_[u], degrees_[u]};
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

DenseMatrix Graph::adjacency() const {
  const auto n = static_cast<Eigen::Index>(num_nodes());
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) a(u, v) = 1.0;
  }
  return a;
}

std::optional<NodeId> Graph::find_isolated() const {
  for (NodeId u = 0; u < num_nodes(); ++u) {
    if (degrees_[u] == 0) return u;
  }
  return std::nullopt;
}

namespace {

bool skip_line(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

ParsedGraph parse_edges_impl(std::istream& in, std::shared_ptr<const NodeNames> reference) {
  std::vector<std::string> names;
  std::unordered_map<std::string, NodeId> index;
  std::vector<Edge> edges;
  EdgeListStats stats;

  auto resolve = [&](std::string_view token, std::size_t line_no) -> NodeId {
    if (reference) {
      auto id = reference->find(token);
      if (!id) throw ParseError("unknown node '" + std::string(token) + "'", line_no);
      return *id;
    }
    auto [it, inserted] = index.emplace(std::string(token), static_cast<NodeId>(names.size()));
    if (inserted) names.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    auto tokens = split_tokens(line);
    if (tokens.size() != 2) {
      throw ParseError("expected two node ids, found " + std::to_string(tokens.size()) +
                           " tokens",
                       line_no);
    }
    ++stats.lines;
    NodeId u = resolve(tokens[0], line_no);
    NodeId v = resolve(tokens[1], line_no);
    if (u == v) {
      ++stats.self_loops_dropped;
      continue;
    }
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  if (stats.lines == 0) throw ParseError("edge list is empty", 0);

  std::sort(edges.begin(), edges.end());
  const auto before = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  stats.duplicates_collapsed = before - edges.size();

  std::shared_ptr<const NodeNames> table =
      reference ? reference : std::make_shared<const NodeNames>(std::move(names));
  ParsedGraph out{Graph::from_edges(table->size(), edges, table), stats};
  if (!reference) {
    if (auto iso = out.graph.find_isolated()) {
      throw Error("node '" + out.graph.names().name(*iso) +
                  "' has no edges after dropping self-loops; prune isolated nodes from the "
                  "input");
    }
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return in;
}

// Numeric labels order numerically, everything else lexicographically after.
bool label_less(const std::string& a, const std::string& b) {
  auto as_number = [](const std::string& s) -> std::optional<long long> {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
  };
  auto na = as_number(a);
  auto nb = as_number(b);
  if (na && nb) return *na < *nb;
  if (na.has_value() != nb.has_value()) return na.has_value();
  return a < b;
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& in) { return parse_edges_impl(in, nullptr); }

ParsedGraph parse_edge_list(std::istream& in, std::shared_ptr<const NodeNames> reference) {
  if (reference == nullptr) throw Error("reference name table is null");
  return parse_edges_impl(in, std::move(reference));
}

ParsedGraph read_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

ParsedGraph read_edge_list(const std::filesystem::path& path,
                           std::shared_ptr<const NodeNames> reference) {
  auto in = open_input(path);
  return parse_edge_list(in, std::move(reference));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) {
    out << g.names().name(e.u) << ' ' << g.names().name(e.v) << '\n';
  }
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_edge_list(out, g);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

CommunityAssignment::CommunityAssignment(std::vector<std::size_t> node_community,
                                         std::vector<Community> communities)
    : node_community_(std::move(node_community)), communities_(std::move(communities)) {
  std::size_t total = 0;
  for (const auto& c : communities_) total += c.nodes.size();
  if (total != node_community_.size()) {
    throw Error("community sizes sum to " + std::to_string(total) + ", expected " +
                std::to_string(node_community_.size()));
  }
}

CommunityAssignment make_communities(std::span<const std::string> labels) {
  std::unordered_map<std::string, std::size_t> by_label;
  std::vector<Community> groups;
  for (std::size_t u = 0; u < labels.size(); ++u) {
    auto [it, inserted] = by_label.emplace(labels[u], groups.size());
    if (inserted) groups.push_back({labels[u], {}});
    groups[it->second].nodes.push_back(static_cast<NodeId>(u));
  }
  std::sort(groups.begin(), groups.end(), [](const Community& a, const Community& b) {
    if (a.nodes.size() != b.nodes.size()) return a.nodes.size() > b.nodes.size();
    return label_less(a.label, b.label);
  });
  std::vector<std::size_t> node_community(labels.size());
  for (std::size_t c = 0; c < groups.size(); ++c) {
    for (NodeId u : groups[c].nodes) node_community[u] = c;
  }
  return {std::move(node_community), std::move(groups)};
}

CommunityAssignment parse_labels(std::istream& in, const Graph& g) {
  std::vector<std::optional<std::string>> labels(g.num_nodes());
  std::string line;
  std::size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    auto tokens = split_tokens(line);
    if (tokens.size() != 2) {
      throw ParseError("expected 'node label', found " + std::to_string(tokens.size()) +
                           " tokens",
                       line_no);
    }
    auto id = g.names().find(tokens[0]);
    if (first_data_line && !id && tokens[0] == "node") {
      first_data_line = false;
      continue;
    }
    first_data_line = false;
    if (!id) throw ParseError("unknown node '" + std::string(tokens[0]) + "'", line_no);
    auto& slot = labels[*id];
    if (slot && *slot != tokens[1]) {
      throw ParseError("conflicting labels for node '" + std::string(tokens[0]) + "'", line_no);
    }
    slot = std::string(tokens[1]);
  }

  std::vector<std::string> missing;
  for (NodeId u = 0; u < labels.size(); ++u) {
    if (!labels[u]) missing.push_back(g.names().name(u));
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << missing.size() << " node(s) without a label:";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg << ' ' << missing[i];
    if (missing.size() > 20) msg << " ...";
    throw Error(msg.str());
  }

  std::vector<std::string> flat;
  flat.reserve(labels.size());
  for (auto& l : labels) flat.push_back(std::move(*l));
  return make_communities(flat);
}

CommunityAssignment read_labels(const std::filesystem::path& path, const Graph& g) {
  auto in = open_input(path);
  return parse_labels(in, g);
}

DenseMatrix transition_matrix(const Graph& g) {
  if (auto iso = g.find_isolated()) {
    throw Error("node '" + g.names().name(*iso) +
                "' is isolated; the transition matrix needs degree >= 1 everywhere");
  }
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  DenseMatrix p = DenseMatrix::Zero(n, n);
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const double w = 1.0 / static_cast<double>(g.degree(u));
    for (NodeId v : g.neighbors(u)) p(u, v) = w;
  }
  return p;
}

DistanceTable all_pairs_distances(const Graph& g) {
  const std::size_t n = g.num_nodes();
  DistanceTable table(n);
#pragma omp parallel
  {
    std::vector<NodeId> frontier;
    frontier.reserve(n);
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n); ++s) {
      const auto src = static_cast<NodeId>(s);
      frontier.clear();
      frontier.push_back(src);
      table.at(src, src) = 0;
      for (std::size_t head = 0; head < frontier.size(); ++head) {
        const NodeId u = frontier[head];
        const std::uint32_t next = table(src, u) + 1;
        for (NodeId v : g.neighbors(u)) {
          if (table(src, v) == DistanceTable::kUnreachable) {
            table.at(src, v) = next;
            frontier.push_back(v);
          }
        }
      }
    }
  }
  return table;
}

CutMeasure cut_measure(const Graph& g, std::span<const NodeId> s) {
  std::vector<char> inside(g.num_nodes(), 0);
  for (NodeId u : s) {
    if (u >= g.num_nodes()) throw Error("node " + std::to_string(u) + " out of range");
    if (inside[u]) throw Error("node " + std::to_string(u) + " listed twice in node set");
    inside[u] = 1;
  }
  CutMeasure m;
  for (NodeId u : s) {
    m.volume_inside += g.degree(u);
    for (NodeId v : g.neighbors(u)) {
      if (!inside[v]) ++m.cut;
    }
  }
  m.volume_outside = g.volume() - m.volume_inside;
  return m;
}

double conductance(const Graph& g, std::span<const NodeId> s) {
  if (s.empty()) throw Error("conductance of an empty node set");
  if (s.size() >= g.num_nodes()) throw Error("conductance needs a proper subset of the nodes");
  const CutMeasure m = cut_measure(g, s);
  const std::size_t denom = std::min(m.volume_inside, m.volume_outside);
  if (denom == 0) throw Error("conductance undefined: one side of the cut has zero volume");
  return static_cast<double>(m.cut) / static_cast<double>(denom);
}

}  // namespace pprei
