#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "pprei/linalg.hpp"

namespace pprei {

struct EmbeddingMeta {
  std::string preset;
  double alpha = 0.0;
  double epsilon = 0.0;
  std::size_t k_horizon = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::size_t graph_n = 0;
  double graph_volume = 0.0;
};

nlohmann::json to_json(const EmbeddingMeta& meta);
EmbeddingMeta embedding_meta_from_json(const nlohmann::json& j);

/// Row embeddings: x * y^T approximates the factorized proximity matrix.
struct EmbeddingPair {
  DenseMatrix x;
  DenseMatrix y;
  EmbeddingMeta meta;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(x.cols()); }
};

/// x = U sqrt(Sigma), y = V sqrt(Sigma) from a rank-d randomized SVD.
EmbeddingPair factorize(const DenseMatrix& m, std::size_t d, std::uint64_t seed);

/// x * y^T.
DenseMatrix reconstruct_proximity(const EmbeddingPair& e);

/// Writes X.mat, Y.mat and meta.json into `dir` (created if missing).
void save_embedding(const std::filesystem::path& dir, const EmbeddingPair& e);
EmbeddingPair load_embedding(const std::filesystem::path& dir);

}  // namespace pprei
