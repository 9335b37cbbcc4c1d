#include "cresolv/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace cresolv {
namespace io {

namespace fs = std::filesystem;
using nlohmann::json;

Matrix read_matrix_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
        if (pos != cell.size()) throw std::invalid_argument(cell);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(path.string() + ":" + std::to_string(lineno) +
                         ": invalid numeric literal '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": ragged row (expected " + std::to_string(rows.front().size()) +
                       " columns)");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path.string() + ": empty matrix");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector read_vector_csv(const fs::path& path) {
  Matrix m = read_matrix_csv(path);
  if (m.cols() != 1) {
    throw ParseError(path.string() + ": expected a single-column vector CSV");
  }
  return m.col(0);
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, path);
}

void write_matrix_csv(const fs::path& path, const Matrix& m) {
  std::string text;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) text += ',';
      text += format_full(m(i, j));
    }
    text += '\n';
  }
  write_text_atomic(path, text);
}

void write_vector_csv(const fs::path& path, const Vector& v) {
  write_matrix_csv(path, v);
}

Matrix parse_matrix(const json& j, const fs::path& base_dir) {
  if (j.is_object() && j.contains("csv")) {
    return read_matrix_csv(base_dir / j.at("csv").get<std::string>());
  }
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected nested array or csv ref");
  if (!j.front().is_array()) {
    // a flat array is a single column
    Matrix m(j.size(), 1);
    for (std::size_t i = 0; i < j.size(); ++i) m(i, 0) = j.at(i).get<double>();
    return m;
  }
  const std::size_t cols = j.front().size();
  Matrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j.at(i).size() != cols) throw ParseError("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  }
  return m;
}

Vector parse_vector(const json& j, const fs::path& base_dir) {
  if (j.is_object() && j.contains("csv")) {
    return read_vector_csv(base_dir / j.at("csv").get<std::string>());
  }
  if (!j.is_array()) throw ParseError("vector: expected array or csv ref");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = j.at(i).get<double>();
  return v;
}

MonotoneOpPtr parse_operator(const json& j, const fs::path& base_dir) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "l1") {
    return std::make_shared<L1Subdifferential>(j.at("dim").get<int>());
  }
  if (type == "zero") {
    return std::make_shared<ZeroOp>(j.at("dim").get<int>());
  }
  if (type == "box") {
    const int dim = j.at("dim").get<int>();
    const double inf = std::numeric_limits<double>::infinity();
    Vector lower = j.contains("lower") ? parse_vector(j.at("lower"), base_dir)
                                       : Vector::Constant(dim, -inf);
    Vector upper = j.contains("upper") ? parse_vector(j.at("upper"), base_dir)
                                       : Vector::Constant(dim, inf);
    return std::make_shared<BoxIndicatorSubdifferential>(std::move(lower),
                                                         std::move(upper));
  }
  if (type == "linear") {
    Matrix A = parse_matrix(j.at("A"), base_dir);
    Vector b = j.contains("b") ? parse_vector(j.at("b"), base_dir)
                               : Vector::Zero(A.rows());
    return std::make_shared<LinearMonotoneOp>(std::move(A), std::move(b));
  }
  throw ParseError("operator: unknown type '" + type + "'");
}

ResolventProblem parse_resolvent_problem(const json& j, const fs::path& base_dir) {
  return ResolventProblem(LinearMap(parse_matrix(j.at("C"), base_dir)),
                          parse_operator(j.at("M"), base_dir),
                          j.at("lambda").get<double>(),
                          parse_vector(j.at("y"), base_dir));
}

SumResolventProblem parse_sum_problem(const json& j, const fs::path& base_dir) {
  return SumResolventProblem(LinearMap(parse_matrix(j.at("C"), base_dir)),
                             parse_operator(j.at("M1"), base_dir),
                             parse_operator(j.at("M2"), base_dir),
                             j.at("lambda").get<double>(),
                             parse_vector(j.at("y"), base_dir));
}

LureSystem parse_lure_system(const json& j, const fs::path& base_dir) {
  Matrix A = parse_matrix(j.at("A"), base_dir);
  Vector b = parse_vector(j.at("b"), base_dir);
  LinearMap C(parse_matrix(j.at("C"), base_dir));
  MonotoneOpPtr M = parse_operator(j.at("M"), base_dir);
  if (!j.contains("P") || (j.at("P").is_string() &&
                           j.at("P").get<std::string>() == "auto-identity")) {
    return LureSystem::with_identity_p(std::move(A), std::move(b), std::move(C),
                                       std::move(M));
  }
  Matrix P = parse_matrix(j.at("P"), base_dir);
  LinearMap B(j.contains("B") ? parse_matrix(j.at("B"), base_dir)
                              : Matrix(P.ldlt().solve(C.matrix().transpose())));
  return LureSystem(std::move(A), std::move(b), std::move(B), std::move(C),
                    std::move(P), std::move(M));
}

SolveOptions parse_solve_options(const json& j) {
  SolveOptions o;
  auto real_or_auto = [](const json& v) -> std::optional<double> {
    if (v.is_string()) {
      if (v.get<std::string>() == "auto") return std::nullopt;
      throw ParseError("options: expected a number or \"auto\"");
    }
    return v.get<double>();
  };
  if (j.contains("mu")) o.mu = real_or_auto(j.at("mu"));
  if (j.contains("kappa")) o.kappa = real_or_auto(j.at("kappa"));
  if (j.contains("alpha")) {
    const json& a = j.at("alpha");
    if (a.is_array()) {
      o.schedule = KMSchedule::sequence(a.get<std::vector<double>>());
    } else {
      o.schedule = KMSchedule::constant(a.get<double>());
    }
  }
  if (j.contains("tol")) o.tol = j.at("tol").get<double>();
  if (j.contains("max_iter")) o.max_iter = j.at("max_iter").get<int>();
  if (j.contains("record_history")) o.record_history = j.at("record_history").get<bool>();
  return o;
}

}  // namespace io
}  // namespace cresolv
