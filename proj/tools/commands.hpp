#pragma once

// Subcommand drivers behind the pprei executable.  Each run_* function
// throws pprei::Error on failure; main() turns that into a diagnostic and a
// nonzero exit code.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pprei/pprei.hpp"

namespace pprei::cli {

namespace fs = std::filesystem;

struct ProximityOptions {
  std::string preset = "strap";
  double alpha = 0.7;
  double epsilon = 1e-7;
  std::size_t k_horizon = 10;
  fs::path schedule;  // lemane only; empty means constant alpha
};

struct OptimizerOptions {
  std::size_t epochs = 40;
  std::size_t newton_iters = 10;
  std::optional<double> step_size;  // default depends on the optimizer
  std::string optimizer = "adam";
  double init_scale = 0.0;
  /// "preset": recompute the same proximity family as the target.
  /// "standard": the plain log PPR form with scale 1/epsilon.
  std::string forward = "preset";
};

struct EmbedOptions {
  fs::path graph;
  ProximityOptions proximity;
  std::size_t dim = 128;
  std::uint64_t seed = 0;
  fs::path out;
};

struct InvertOptions {
  std::string method;  // analytical | optimize
  fs::path embedding;  // directory written by embed
  fs::path proximity;  // or a matrix file (.mat binary or .csv)
  fs::path graph;      // supplies names, degrees and m
  fs::path degrees;    // "node degree" or "degree" lines
  std::optional<std::size_t> edges;
  std::optional<std::string> preset;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<std::size_t> k_horizon;
  OptimizerOptions optimizer;
  std::uint64_t seed = 0;
  fs::path loss_trace;
  fs::path diagnostics;
  fs::path out;
};

struct EvaluateOptions {
  fs::path graph;
  fs::path recovered;
  fs::path labels;
  fs::path out;
};

struct SweepOptions {
  fs::path graph;
  fs::path labels;
  std::vector<std::size_t> dims;
  std::vector<std::string> presets{"strap"};
  std::vector<std::string> methods{"optimize"};
  ProximityOptions proximity;
  OptimizerOptions optimizer;
  std::uint64_t seed = 0;
  fs::path out;
};

void run_embed(const EmbedOptions& opts, std::ostream& log);
void run_invert(const InvertOptions& opts, std::ostream& log);
void run_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& log);
void run_sweep(const SweepOptions& opts, std::ostream& log);

// Pieces shared with the tests.

struct DegreeSequence {
  std::vector<double> degrees;
  std::shared_ptr<const NodeNames> names;
};

DegreeSequence read_degrees(const fs::path& path);

/// Config for `preset` on a graph of volume `volume`.
ProximityConfig proximity_config(const ProximityOptions& opts, double volume);

OptConfig optimizer_config(const OptimizerOptions& opts, const ProximityConfig& target,
                           double volume, std::uint64_t seed);

struct SweepRow {
  std::size_t dim = 0;
  std::string preset;
  std::string method;
  std::optional<double> err_a;
  std::optional<double> err_l;
  std::optional<double> err_phi_avg;
  std::string status = "ok";
};

std::vector<SweepRow> sweep(const SweepOptions& opts, std::ostream& log);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace pprei::cli
