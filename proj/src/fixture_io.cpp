#include "nlpdhg/fixture_io.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "nlpdhg/lasso.hpp"
#include "nlpdhg/linear_operator.hpp"

namespace nlpdhg::bench {

namespace fs = std::filesystem;

std::string kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::Logreg: return "logreg";
    case ProblemKind::Game: return "game";
    case ProblemKind::Lasso: return "lasso";
  }
  return "?";
}

ProblemKind parse_kind(const std::string& s) {
  if (s == "logreg") return ProblemKind::Logreg;
  if (s == "game") return ProblemKind::Game;
  if (s == "lasso") return ProblemKind::Lasso;
  throw ConfigError("unknown problem kind: " + s);
}

double default_lambda(ProblemKind k, const Matrix& matrix, const Vector& b) {
  switch (k) {
    case ProblemKind::Logreg: return 100.0;
    case ProblemKind::Game: return 0.1;
    case ProblemKind::Lasso: return 0.5 * lasso_lambda_max(matrix, b);
  }
  return 1.0;
}

std::string write_fixture(const std::string& dir, const ProblemData& data) {
  fs::create_directories(dir);
  store_matrix_csv((fs::path(dir) / "matrix.csv").string(), data.matrix);
  nlohmann::json j;
  j["kind"] = kind_name(data.kind);
  j["lambda"] = data.lambda;
  j["m"] = data.matrix.rows();
  j[data.kind == ProblemKind::Logreg ? "d" : "n"] = data.matrix.cols();
  j["seed"] = data.seed;
  j["matrix"] = "matrix.csv";
  if (data.kind == ProblemKind::Lasso) {
    store_vector_csv((fs::path(dir) / "b.csv").string(), data.b);
    j["b"] = "b.csv";
  }
  const std::string path = (fs::path(dir) / "problem.json").string();
  std::ofstream(path) << j.dump(2) << '\n';
  return path;
}

ProblemData load_fixture(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open " + json_path);
  nlohmann::json j = nlohmann::json::parse(in);
  const fs::path base = fs::path(json_path).parent_path();
  ProblemData d;
  d.kind = parse_kind(j.at("kind").get<std::string>());
  d.matrix = load_matrix_csv((base / j.value("matrix", std::string("matrix.csv"))).string());
  if (d.kind == ProblemKind::Lasso) d.b = load_vector_csv((base / j.value("b", std::string("b.csv"))).string());
  d.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("m") && j["m"].get<Eigen::Index>() != d.matrix.rows())
    throw DimensionError(json_path + ": m does not match the matrix");
  for (const char* key : {"d", "n"})
    if (j.contains(key) && j[key].get<Eigen::Index>() != d.matrix.cols())
      throw DimensionError(json_path + ": column count does not match the matrix");
  d.lambda = j.contains("lambda") && !j["lambda"].is_null() ? j["lambda"].get<double>()
                                                            : default_lambda(d.kind, d.matrix, d.b);
  return d;
}

}  // namespace nlpdhg::bench
