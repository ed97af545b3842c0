#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace pprei::cli;

void add_proximity_flags(CLI::App& app, ProximityOptions& p) {
  app.add_option("--preset", p.preset, "strap, approxppr, nrp, lemane, sensei or deepwalk")
      ->capture_default_str();
  app.add_option("--alpha", p.alpha, "Stopping probability")->capture_default_str();
  app.add_option("--epsilon", p.epsilon, "Error tolerance in the proximity scale")
      ->capture_default_str();
  app.add_option("--k-horizon", p.k_horizon, "Number of hops K")->capture_default_str();
  app.add_option("--schedule", p.schedule, "Per-hop alpha file (lemane)");
}

void add_optimizer_flags(CLI::App& app, OptimizerOptions& o) {
  app.add_option("--epochs", o.epochs, "Training epochs p")->capture_default_str();
  app.add_option("--newton-iters", o.newton_iters, "Newton iterations q for the volume shift")
      ->capture_default_str();
  app.add_option("--step-size", o.step_size, "Learning rate (adam 0.3, gd 1.0)");
  app.add_option("--optimizer", o.optimizer, "adam or gd")->capture_default_str();
  app.add_option("--init-scale", o.init_scale, "Std-dev of the initial logit noise")
      ->capture_default_str();
  app.add_option("--forward", o.forward, "Recomputed proximity: preset or standard")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recover graph topology from proximity-based node embeddings"};
  app.require_subcommand(1);

  EmbedOptions embed;
  auto* embed_cmd = app.add_subcommand("embed", "Build a proximity matrix and factorize it");
  embed_cmd->add_option("--graph", embed.graph, "Edge-list file")->required();
  add_proximity_flags(*embed_cmd, embed.proximity);
  embed_cmd->add_option("--dim,-d", embed.dim, "Embedding dimension")->capture_default_str();
  embed_cmd->add_option("--seed", embed.seed, "SVD seed")->capture_default_str();
  embed_cmd->add_option("--out,-o", embed.out, "Output directory")->required();

  InvertOptions invert;
  auto* invert_cmd = app.add_subcommand("invert", "Recover an edge list from an embedding");
  invert_cmd->add_option("method", invert.method, "analytical or optimize")
      ->required()
      ->check(CLI::IsMember({"analytical", "optimize"}));
  invert_cmd->add_option("--embedding", invert.embedding, "Embedding directory");
  invert_cmd->add_option("--proximity", invert.proximity, "Target matrix (.mat or .csv)");
  invert_cmd->add_option("--graph", invert.graph, "Original graph (names, degrees, m)");
  invert_cmd->add_option("--degrees", invert.degrees, "Degree file");
  invert_cmd->add_option("--edges", invert.edges, "Number of edges to keep");
  invert_cmd->add_option("--preset", invert.preset, "Target proximity preset");
  invert_cmd->add_option("--alpha", invert.alpha, "Stopping probability");
  invert_cmd->add_option("--epsilon", invert.epsilon, "Error tolerance");
  invert_cmd->add_option("--k-horizon", invert.k_horizon, "Number of hops K");
  add_optimizer_flags(*invert_cmd, invert.optimizer);
  invert_cmd->add_option("--seed", invert.seed, "Initialization seed")->capture_default_str();
  invert_cmd->add_option("--loss-trace", invert.loss_trace, "CSV file of epoch,loss");
  invert_cmd->add_option("--diagnostics", invert.diagnostics, "Analytical pipeline JSON");
  invert_cmd->add_option("--out,-o", invert.out, "Recovered edge list")->required();

  EvaluateOptions evaluate;
  auto* eval_cmd = app.add_subcommand("evaluate", "Compare a recovered graph to the original");
  eval_cmd->add_option("--graph", evaluate.graph, "Original edge list")->required();
  eval_cmd->add_option("--recovered", evaluate.recovered, "Recovered edge list")->required();
  eval_cmd->add_option("--labels", evaluate.labels, "Community label file");
  eval_cmd->add_option("--out,-o", evaluate.out, "Report JSON (stdout if omitted)");

  SweepOptions sweep;
  sweep.dims = {16, 32, 64, 128, 256};
  auto* sweep_cmd = app.add_subcommand("sweep", "Embed, invert and evaluate across dimensions");
  sweep_cmd->add_option("--graph", sweep.graph, "Edge-list file")->required();
  sweep_cmd->add_option("--labels", sweep.labels, "Community label file");
  sweep_cmd->add_option("--dims", sweep.dims, "Embedding dimensions")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--presets", sweep.presets, "Proximity presets")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--methods", sweep.methods, "analytical and/or optimize")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--alpha", sweep.proximity.alpha, "Stopping probability")
      ->capture_default_str();
  sweep_cmd->add_option("--epsilon", sweep.proximity.epsilon, "Error tolerance")
      ->capture_default_str();
  sweep_cmd->add_option("--k-horizon", sweep.proximity.k_horizon, "Number of hops K")
      ->capture_default_str();
  sweep_cmd->add_option("--schedule", sweep.proximity.schedule, "Per-hop alpha file (lemane)");
  add_optimizer_flags(*sweep_cmd, sweep.optimizer);
  sweep_cmd->add_option("--seed", sweep.seed, "Seed for SVD and initialization")
      ->capture_default_str();
  sweep_cmd->add_option("--out,-o", sweep.out, "Output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  pprei::configure_threads_from_env();
  try {
    if (*embed_cmd) run_embed(embed, std::cerr);
    if (*invert_cmd) run_invert(invert, std::cerr);
    if (*eval_cmd) run_evaluate(evaluate, std::cout, std::cerr);
    if (*sweep_cmd) run_sweep(sweep, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "pprei: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
