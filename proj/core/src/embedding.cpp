#include "pprei/embedding.hpp"

#include <cmath>
#include <fstream>

#include "pprei/error.hpp"
#include "pprei/matrix_io.hpp"

namespace pprei {

nlohmann::json to_json(const EmbeddingMeta& meta) {
  return {
      {"preset", meta.preset},
      {"alpha", meta.alpha},
      {"epsilon", meta.epsilon},
      {"k_horizon", meta.k_horizon},
      {"dim", meta.dim},
      {"seed", meta.seed},
      {"graph_n", meta.graph_n},
      {"graph_volume", meta.graph_volume},
  };
}

EmbeddingMeta embedding_meta_from_json(const nlohmann::json& j) {
  try {
    EmbeddingMeta meta;
    meta.preset = j.at("preset").get<std::string>();
    meta.alpha = j.at("alpha").get<double>();
    meta.epsilon = j.at("epsilon").get<double>();
    meta.k_horizon = j.at("k_horizon").get<std::size_t>();
    meta.dim = j.at("dim").get<std::size_t>();
    meta.seed = j.at("seed").get<std::uint64_t>();
    meta.graph_n = j.at("graph_n").get<std::size_t>();
    meta.graph_volume = j.at("graph_volume").get<double>();
    return meta;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid embedding meta: ") + e.what());
  }
}

EmbeddingPair factorize(const DenseMatrix& m, std::size_t d, std::uint64_t seed) {
  if (m.rows() != m.cols()) throw Error("factorize expects a square proximity matrix");
  if (d < 1 || d > static_cast<std::size_t>(m.rows())) {
    throw Error("dimension " + std::to_string(d) + " exceeds node count " +
                std::to_string(m.rows()));
  }
  const SvdResult svd = randomized_svd(m, d, seed);
  const Vector root = svd.sigma.cwiseSqrt();
  EmbeddingPair e;
  e.x = svd.u * root.asDiagonal();
  e.y = svd.v * root.asDiagonal();
  e.meta.dim = d;
  e.meta.seed = seed;
  e.meta.graph_n = static_cast<std::size_t>(m.rows());
  return e;
}

DenseMatrix reconstruct_proximity(const EmbeddingPair& e) {
  if (e.x.rows() != e.y.rows() || e.x.cols() != e.y.cols()) {
    throw Error("embedding factors have mismatched shapes");
  }
  return matmul(e.x, e.y.transpose());
}

void save_embedding(const std::filesystem::path& dir, const EmbeddingPair& e) {
  std::filesystem::create_directories(dir);
  write_matrix(dir / "X.mat", e.x);
  write_matrix(dir / "Y.mat", e.y);
  std::ofstream meta(dir / "meta.json");
  if (!meta) throw Error("cannot write '" + (dir / "meta.json").string() + "'");
  meta << to_json(e.meta).dump(2) << '\n';
  if (!meta) throw Error("write failed for meta.json");
}

EmbeddingPair load_embedding(const std::filesystem::path& dir) {
  EmbeddingPair e;
  e.x = read_matrix(dir / "X.mat");
  e.y = read_matrix(dir / "Y.mat");
  std::ifstream meta(dir / "meta.json");
  if (!meta) throw Error("cannot open '" + (dir / "meta.json").string() + "'");
  nlohmann::json j;
  try {
    meta >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("meta.json: ") + ex.what());
  }
  e.meta = embedding_meta_from_json(j);
  if (e.x.rows() != e.y.rows() || e.x.cols() != e.y.cols()) {
    throw Error("X.mat and Y.mat have different shapes");
  }
  return e;
}

}  // namespace pprei
