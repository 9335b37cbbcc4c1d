#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cresolv/composite.hpp"
#include "cresolv/lure.hpp"

namespace cresolv {
namespace io {

/// Parse failure with the offending file and (1-based) line when known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV matrix: one row per line, comma-separated decimal literals, no
/// header. Vectors are single-column CSV.
Matrix read_matrix_csv(const std::filesystem::path& path);
Vector read_vector_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
void write_vector_csv(const std::filesystem::path& path, const Vector& v);

/// Writes text to path atomically (temp file + rename).
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// Round-trip-exact decimal rendering (17 significant digits).
std::string format_full(double v);

/// Matrix/vector JSON values: nested arrays inline, or {"csv": "path"}
/// resolved relative to base_dir.
Matrix parse_matrix(const nlohmann::json& j, const std::filesystem::path& base_dir);
Vector parse_vector(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Operator descriptor:
/// {"type": "l1"|"box"|"linear"|"zero", "dim": n,
///  optional "lower"/"upper" (box), "A"/"b" (linear)}.
MonotoneOpPtr parse_operator(const nlohmann::json& j,
                             const std::filesystem::path& base_dir);

/// {"C": matrix, "M": operator, "lambda": real, "y": vector}
ResolventProblem parse_resolvent_problem(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir);

/// {"C": matrix, "M1": operator, "M2": operator, "lambda": real, "y": vector}
SumResolventProblem parse_sum_problem(const nlohmann::json& j,
                                      const std::filesystem::path& base_dir);

/// {"A":…, "b":…, "B":…, "C":…, "P": matrix or "auto-identity", "M": operator}
LureSystem parse_lure_system(const nlohmann::json& j,
                             const std::filesystem::path& base_dir);

/// {"mu"|"kappa": real or "auto", "alpha": real or list, "tol": real,
///  "max_iter": int} — absent fields keep solver defaults.
SolveOptions parse_solve_options(const nlohmann::json& j);

}  // namespace io
}  // namespace cresolv
