#include "cresolv/repro.hpp"

#include <cmath>
#include <cstdio>

namespace cresolv {
namespace repro {

LinearMap demo_matrix() {
  Matrix C(5, 5);
  C << 1, 3, 7, 0, 8,
       2, 4, 5, 8, 7,
       7, 9, 6, 0, 1,
       2, 0, 1, 4, 7,
       2, 5, 8, 3, 8;
  return LinearMap(C);
}

Vector demo_y() {
  Vector y(5);
  y << 2, 4, -5, 3, 9;
  return y;
}

namespace {

TableRow run_row(const ResolventProblem& p, double mu) {
  SolveOptions opts;
  opts.mu = mu;
  opts.schedule = KMSchedule::constant(0.3);
  opts.tol = 1e-3;
  opts.max_iter = 500;
  SolveReport r = solve_algorithm2(p, opts);
  TableRow row;
  row.lambda = p.lambda;
  row.mu = mu;
  row.certificate = r.condition_certificate;
  row.output = r.x;
  row.iterations = r.iterations;
  row.converged = r.converged;
  return row;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

bool equal_2dp(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(round2(a(i)) - round2(b(i))) > 1e-9) return false;
  }
  return true;
}

}  // namespace

Report run() {
  const LinearMap C = demo_matrix();
  const Vector y = demo_y();
  auto M = std::make_shared<L1Subdifferential>(5);

  Report rep;
  rep.reference_output = Vector(5);
  rep.reference_output << 1.86, 3.79, -5.27, 2.85, 8.69;

  ResolventProblem mcx(C, M, 1.0, y);
  for (double mu : {1e-2, 1e-3, 1e-4, 1e-5}) {
    rep.single_parameter.push_back(run_row(mcx, mu));
  }

  ResolventProblem stable(C, M, 0.01, y);
  for (double mu : {1.0, 1e-1, 1e-2, 1e-3}) {
    rep.two_parameter.push_back(run_row(stable, mu));
  }

  rep.stable_rows_agree = true;
  rep.matches_reference = true;
  for (const auto& row : rep.two_parameter) {
    if (!equal_2dp(row.output, rep.two_parameter.front().output)) {
      rep.stable_rows_agree = false;
    }
    if (!equal_2dp(row.output, rep.reference_output)) {
      rep.matches_reference = false;
    }
  }
  return rep;
}

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void render_rows(std::string& out, const std::vector<TableRow>& rows) {
  out += "lambda,mu,certificate,iterations,converged,x1,x2,x3,x4,x5\n";
  for (const auto& r : rows) {
    out += fixed2(r.lambda) + "," + std::to_string(r.mu) + "," +
           fixed2(r.certificate) + "," + std::to_string(r.iterations) + "," +
           (r.converged ? "1" : "0");
    for (Eigen::Index i = 0; i < r.output.size(); ++i) {
      out += "," + fixed2(r.output(i));
    }
    out += '\n';
  }
}

}  // namespace

std::string render(const Report& report) {
  std::string out;
  out += "# single-parameter scheme (lambda = 1)\n";
  render_rows(out, report.single_parameter);
  out += "# two-parameter scheme (lambda = 0.01)\n";
  render_rows(out, report.two_parameter);
  out += "# stable rows agree to 2 d.p.: ";
  out += report.stable_rows_agree ? "yes" : "no";
  out += "\n# stable rows match reference ";
  out += "(";
  for (Eigen::Index i = 0; i < report.reference_output.size(); ++i) {
    if (i) out += ", ";
    out += fixed2(report.reference_output(i));
  }
  out += "): ";
  out += report.matches_reference ? "yes" : "no";
  out += "\n";
  return out;
}

}  // namespace repro
}  // namespace cresolv
