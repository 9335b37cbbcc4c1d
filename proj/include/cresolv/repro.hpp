#pragma once

#include <string>
#include <vector>

#include "cresolv/composite.hpp"

namespace cresolv {
namespace repro {

/// Built-in 5x5 demo instance: an l1 composite resolvent whose behavior
/// separates the two-parameter scheme from the single-parameter one.
LinearMap demo_matrix();
Vector demo_y();

/// One row of the comparison report.
struct TableRow {
  double lambda = 0.0;
  double mu = 0.0;
  double certificate = 0.0;  // ||I - lambda*mu*CC^T||
  Vector output;
  int iterations = 0;
  bool converged = false;
};

struct Report {
  std::vector<TableRow> single_parameter;  // lambda = 1 rows
  std::vector<TableRow> two_parameter;     // lambda = 0.01 rows
  bool stable_rows_agree = false;          // two-parameter rows pairwise equal to 2 d.p.
  Vector reference_output;                 // (1.86, 3.79, -5.27, 2.85, 8.69)
  bool matches_reference = false;          // ... and they match it to 2 d.p.
};

/// Runs the full comparison: lambda=1 with mu in {1e-2..1e-5} and
/// lambda=0.01 with mu in {1, 1e-1, 1e-2, 1e-3}, alpha = 0.3, stopping
/// after 500 iterations or step <= 1e-3.
Report run();

/// Renders the report with 2-decimal fixed-point output columns;
/// deterministic byte-for-byte across runs.
std::string render(const Report& report);

}  // namespace repro
}  // namespace cresolv
