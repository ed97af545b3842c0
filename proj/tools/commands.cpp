#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace pprei::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

DenseMatrix read_target_matrix(const fs::path& path) {
  if (path.extension() == ".csv") {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    return read_matrix_csv(in);
  }
  return read_matrix(path);
}

template <class T>
T pick(const std::optional<T>& flag, const std::optional<T>& meta, T fallback) {
  if (flag) return *flag;
  if (meta) return *meta;
  return fallback;
}

// Identity of the node set behind a target matrix: names, degrees and m when
// known.
struct NodeContext {
  std::shared_ptr<const NodeNames> names;
  std::optional<std::vector<double>> degrees;
  std::optional<std::size_t> edges;
};

NodeContext node_context(const InvertOptions& opts, std::size_t n) {
  NodeContext ctx;
  if (!opts.graph.empty()) {
    const Graph g = read_edge_list(opts.graph).graph;
    if (g.num_nodes() != n) {
      throw Error("graph has " + std::to_string(g.num_nodes()) + " nodes, target matrix has " +
                  std::to_string(n));
    }
    ctx.names = g.shared_names();
    ctx.degrees = g.degree_vector();
    ctx.edges = g.num_edges();
  } else if (!opts.degrees.empty()) {
    DegreeSequence ds = read_degrees(opts.degrees);
    if (ds.degrees.size() != n) {
      throw Error("degree file lists " + std::to_string(ds.degrees.size()) +
                  " nodes, target matrix has " + std::to_string(n));
    }
    double total = 0.0;
    for (double d : ds.degrees) total += d;
    const double half = total / 2.0;
    if (half != std::floor(half)) throw Error("degree sequence sums to an odd number");
    ctx.names = ds.names;
    ctx.degrees = std::move(ds.degrees);
    ctx.edges = static_cast<std::size_t>(half);
  }
  if (opts.edges) ctx.edges = opts.edges;
  if (!ctx.names) ctx.names = NodeNames::identity(n);
  return ctx;
}

void write_graph(const fs::path& path, const Graph& g) {
  auto out = open_output(path);
  write_edge_list(out, g);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::string csv_value(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream s;
  s << std::setprecision(10) << *v;
  return s.str();
}

std::string csv_status(std::string msg) {
  std::replace(msg.begin(), msg.end(), ',', ';');
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  return msg;
}

}  // namespace

DegreeSequence read_degrees(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open degree file '" + path.string() + "'");
  DegreeSequence out;
  std::vector<std::string> names;
  std::string line;
  std::size_t line_no = 0;
  std::optional<bool> named;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty() || tok.front().front() == '#') continue;
    if (tok.size() > 2) throw ParseError("expected 'degree' or 'node degree'", line_no);
    const bool this_named = tok.size() == 2;
    if (named && *named != this_named) throw ParseError("mixed one- and two-column lines", line_no);
    named = this_named;
    const std::string& value = tok.back();
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || !(d >= 1.0) || d != std::floor(d)) {
      throw ParseError("degree must be a positive integer, got '" + value + "'", line_no);
    }
    out.degrees.push_back(d);
    if (this_named) names.push_back(tok.front());
  }
  if (out.degrees.empty()) throw Error("degree file '" + path.string() + "' is empty");
  out.names = named.value_or(false) ? std::make_shared<const NodeNames>(std::move(names))
                                    : NodeNames::identity(out.degrees.size());
  return out;
}

ProximityConfig proximity_config(const ProximityOptions& opts, double volume) {
  const Preset preset = parse_preset(opts.preset);
  PresetParams params;
  params.alpha = opts.alpha;
  params.epsilon = opts.epsilon;
  params.horizon = opts.k_horizon;
  params.volume = volume;
  if (!opts.schedule.empty()) {
    if (preset != Preset::lemane) throw Error("--schedule applies only to the lemane preset");
    std::ifstream in(opts.schedule);
    if (!in) throw Error("cannot open schedule '" + opts.schedule.string() + "'");
    params.schedule = parse_alpha_schedule(in);
  }
  return preset_config(preset, params);
}

OptConfig optimizer_config(const OptimizerOptions& opts, const ProximityConfig& target,
                           double volume, std::uint64_t seed) {
  OptConfig cfg;
  cfg.epochs = opts.epochs;
  cfg.newton_iters = opts.newton_iters;
  if (opts.optimizer == "adam") {
    cfg.optimizer = Optimizer::adam;
    cfg.step_size = opts.step_size.value_or(0.3);
  } else if (opts.optimizer == "gd") {
    cfg.optimizer = Optimizer::gradient_descent;
    cfg.step_size = opts.step_size.value_or(1.0);
  } else {
    throw Error("unknown optimizer '" + opts.optimizer + "' (expected adam or gd)");
  }
  if (opts.forward == "preset") {
    cfg.form = ForwardForm::from_config(target);
  } else if (opts.forward == "standard") {
    cfg.form = ForwardForm::standard(target.alphas.front(), target.epsilon, target.horizon);
  } else {
    throw Error("unknown forward form '" + opts.forward + "' (expected preset or standard)");
  }
  cfg.init_scale = opts.init_scale;
  cfg.target_volume = volume;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

void run_embed(const EmbedOptions& opts, std::ostream& log) {
  if (opts.out.empty()) throw Error("embed needs an output directory (--out)");
  const Graph g = read_edge_list(opts.graph).graph;
  if (opts.dim > g.num_nodes()) {
    throw Error("dimension exceeds node count (d=" + std::to_string(opts.dim) +
                ", n=" + std::to_string(g.num_nodes()) + ")");
  }
  const auto volume = static_cast<double>(g.volume());
  const ProximityConfig cfg = proximity_config(opts.proximity, volume);

  auto t0 = Clock::now();
  const DenseMatrix m = build_proximity(g, cfg);
  log << "proximity " << opts.proximity.preset << " n=" << g.num_nodes() << " built in "
      << std::fixed << std::setprecision(3) << seconds_since(t0) << " s\n";

  t0 = Clock::now();
  EmbeddingPair e = factorize(m, opts.dim, opts.seed);
  log << "svd d=" << opts.dim << " in " << seconds_since(t0) << " s\n" << std::defaultfloat;

  e.meta.preset = opts.proximity.preset;
  e.meta.alpha = opts.proximity.alpha;
  e.meta.epsilon = cfg.epsilon;
  e.meta.k_horizon = cfg.horizon;
  e.meta.graph_volume = volume;
  save_embedding(opts.out, e);
}

void run_invert(const InvertOptions& opts, std::ostream& log) {
  if (opts.out.empty()) throw Error("invert needs an output edge-list path (--out)");

  DenseMatrix target;
  std::optional<EmbeddingMeta> meta;
  if (!opts.embedding.empty()) {
    const EmbeddingPair e = load_embedding(opts.embedding);
    target = reconstruct_proximity(e);
    meta = e.meta;
  } else if (!opts.proximity.empty()) {
    target = read_target_matrix(opts.proximity);
  } else {
    throw Error("invert needs --embedding or --proximity");
  }
  if (target.rows() != target.cols()) throw Error("target proximity must be square");
  const auto n = static_cast<std::size_t>(target.rows());
  const NodeContext ctx = node_context(opts, n);

  std::optional<std::string> meta_preset;
  std::optional<double> meta_alpha;
  std::optional<double> meta_epsilon;
  std::optional<std::size_t> meta_k;
  if (meta) {
    meta_preset = meta->preset;
    meta_alpha = meta->alpha;
    meta_epsilon = meta->epsilon;
    meta_k = meta->k_horizon;
  }
  ProximityOptions prox;
  prox.preset = pick(opts.preset, meta_preset, std::string("strap"));
  prox.alpha = pick(opts.alpha, meta_alpha, prox.alpha);
  prox.epsilon = pick(opts.epsilon, meta_epsilon, prox.epsilon);
  prox.k_horizon = pick(opts.k_horizon, meta_k, prox.k_horizon);

  if (opts.method == "analytical") {
    if (!ctx.degrees) {
      throw Error("analytical method requires the degree sequence (--degrees or --graph)");
    }
    if (!opts.preset && meta_preset && *meta_preset != "deepwalk") {
      throw Error("analytical method inverts the deepwalk proximity; embedding was built with '" +
                  *meta_preset + "'");
    }
    AnalyticalInputs in;
    in.proximity = std::move(target);
    in.degrees = *ctx.degrees;
    for (double d : in.degrees) in.volume += d;
    in.alpha = prox.alpha;
    in.horizon = prox.k_horizon;
    in.num_edges = *ctx.edges;
    in.names = ctx.names;

    const auto t0 = Clock::now();
    const AnalyticalResult r = invert_analytical(in);
    const double elapsed = seconds_since(t0);
    write_graph(opts.out, r.graph);

    double kept_min = std::numeric_limits<double>::infinity();
    for (const Edge& e : r.graph.edges()) kept_min = std::min(kept_min, r.soft_adjacency(e.u, e.v));
    nlohmann::json diag = {
        {"method", "analytical"},
        {"n", n},
        {"edges", in.num_edges},
        {"alpha", in.alpha},
        {"k_horizon", in.horizon},
        {"volume", in.volume},
        {"soft_adjacency_max", r.soft_adjacency.maxCoeff()},
        {"soft_adjacency_min", r.soft_adjacency.minCoeff()},
        {"threshold", in.num_edges > 0 ? nlohmann::json(kept_min) : nlohmann::json(nullptr)},
        {"seconds", elapsed},
    };
    if (!opts.diagnostics.empty()) {
      auto out = open_output(opts.diagnostics);
      out << diag.dump(2) << '\n';
    }
    log << "analytical inversion: " << r.graph.num_edges() << " edges in " << elapsed << " s\n";
    return;
  }

  if (opts.method != "optimize") {
    throw Error("unknown method '" + opts.method + "' (expected analytical or optimize)");
  }
  if (!ctx.edges) {
    throw Error("optimize method requires the edge count (--edges, --degrees or --graph)");
  }
  const double volume = 2.0 * static_cast<double>(*ctx.edges);
  const ProximityConfig target_cfg = proximity_config(prox, volume);
  const OptConfig cfg = optimizer_config(opts.optimizer, target_cfg, volume, opts.seed);

  const auto t0 = Clock::now();
  const OptResult r = invert_optimize(target, cfg, *ctx.edges, ctx.names);
  write_graph(opts.out, r.graph);
  if (!opts.loss_trace.empty()) {
    auto out = open_output(opts.loss_trace);
    out << "epoch,loss\n" << std::setprecision(17);
    for (std::size_t i = 0; i < r.loss_trace.size(); ++i) out << i << ',' << r.loss_trace[i] << '\n';
    if (!out) throw Error("write failed for '" + opts.loss_trace.string() + "'");
  }
  log << "optimization: " << cfg.epochs << " epochs, loss " << r.loss_trace.front() << " -> "
      << r.final_loss << " in " << seconds_since(t0) << " s\n";
}

void run_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& log) {
  const Graph g = read_edge_list(opts.graph).graph;
  const Graph g_hat = read_edge_list(opts.recovered, g.shared_names()).graph;
  std::optional<CommunityAssignment> labels;
  if (!opts.labels.empty()) {
    labels = read_labels(opts.labels, g);
  } else {
    log << "no label file; conductance section omitted\n";
  }
  const RecoveryReport r = recovery_report(g, g_hat, labels ? &*labels : nullptr);
  const std::string text = to_json(r).dump(2);
  if (!opts.out.empty()) {
    auto file = open_output(opts.out);
    file << text << '\n';
    if (!file) throw Error("write failed for '" + opts.out.string() + "'");
  } else {
    out << text << '\n';
  }
  out << "err_A=" << r.err_a << " err_l=" << r.err_l;
  if (r.err_phi_avg) out << " err_phi_avg=" << *r.err_phi_avg;
  out << '\n';
}

std::vector<SweepRow> sweep(const SweepOptions& opts, std::ostream& log) {
  if (opts.dims.empty()) throw Error("sweep needs at least one dimension");
  if (opts.presets.empty() || opts.methods.empty()) throw Error("sweep needs presets and methods");
  for (const auto& m : opts.methods) {
    if (m != "analytical" && m != "optimize") throw Error("unknown method '" + m + "'");
  }
  const Graph g = read_edge_list(opts.graph).graph;
  std::optional<CommunityAssignment> labels;
  if (!opts.labels.empty()) labels = read_labels(opts.labels, g);
  const auto volume = static_cast<double>(g.volume());
  const std::vector<double> degrees = g.degree_vector();

  std::vector<SweepRow> rows;
  for (const auto& preset : opts.presets) {
    ProximityOptions prox = opts.proximity;
    prox.preset = preset;
    std::optional<ProximityConfig> cfg;
    std::optional<DenseMatrix> m;
    std::string failure;
    try {
      cfg = proximity_config(prox, volume);
      const auto t0 = Clock::now();
      m = build_proximity(g, *cfg);
      log << "sweep: " << preset << " proximity in " << seconds_since(t0) << " s\n";
    } catch (const Error& e) {
      failure = e.what();
    }

    for (std::size_t d : opts.dims) {
      std::optional<DenseMatrix> m_hat;
      std::string dim_failure = failure;
      if (dim_failure.empty()) {
        try {
          if (d > g.num_nodes()) {
            throw Error("dimension exceeds node count (d=" + std::to_string(d) + ")");
          }
          m_hat = reconstruct_proximity(factorize(*m, d, opts.seed));
        } catch (const Error& e) {
          dim_failure = e.what();
        }
      }
      for (const auto& method : opts.methods) {
        SweepRow row;
        row.dim = d;
        row.preset = preset;
        row.method = method;
        try {
          if (!dim_failure.empty()) throw Error(dim_failure);
          const auto t0 = Clock::now();
          Graph g_hat;
          if (method == "analytical") {
            if (preset != "deepwalk") {
              throw Error("analytical method requires the deepwalk preset");
            }
            AnalyticalInputs in;
            in.proximity = *m_hat;
            in.degrees = degrees;
            in.volume = volume;
            in.alpha = cfg->alphas.front();
            in.horizon = cfg->horizon;
            in.num_edges = g.num_edges();
            in.names = g.shared_names();
            g_hat = invert_analytical(in).graph;
          } else {
            const OptConfig oc = optimizer_config(opts.optimizer, *cfg, volume, opts.seed);
            g_hat = invert_optimize(*m_hat, oc, g.num_edges(), g.shared_names()).graph;
          }
          const RecoveryReport r = recovery_report(g, g_hat, labels ? &*labels : nullptr);
          row.err_a = r.err_a;
          row.err_l = r.err_l;
          row.err_phi_avg = r.err_phi_avg;
          log << "sweep: d=" << d << ' ' << preset << ' ' << method << " err_A=" << r.err_a
              << " in " << seconds_since(t0) << " s\n";
        } catch (const Error& e) {
          row.status = "error: " + csv_status(e.what());
          log << "sweep: d=" << d << ' ' << preset << ' ' << method << " failed: " << e.what()
              << '\n';
        }
        rows.push_back(std::move(row));
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.dim < b.dim; });
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "dim,preset,method,err_A,err_l,err_phi_avg,status\n";
  for (const auto& r : rows) {
    out << r.dim << ',' << r.preset << ',' << r.method << ',' << csv_value(r.err_a) << ','
        << csv_value(r.err_l) << ',' << csv_value(r.err_phi_avg) << ',' << r.status << '\n';
  }
}

void run_sweep(const SweepOptions& opts, std::ostream& log) {
  if (opts.out.empty()) throw Error("sweep needs an output CSV path (--out)");
  const auto rows = sweep(opts, log);
  auto out = open_output(opts.out);
  write_sweep_csv(out, rows);
  if (!out) throw Error("write failed for '" + opts.out.string() + "'");
}

}  // namespace pprei::cli
