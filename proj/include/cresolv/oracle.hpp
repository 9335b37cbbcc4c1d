#pragma once

#include "cresolv/composite.hpp"

namespace cresolv {
namespace oracle {

struct OracleReport {
  Vector x_ref;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

/// Independent reference solve of y in x + lambda*C^T M(Cx) for
/// subdifferential catalog operators (l1, box), i.e. of
/// min 1/2||x-y||^2 + lambda*f(Cx), via an operator-splitting scheme with
/// exact linear solves that shares no machinery with the fixed-point maps.
/// Throws UnsupportedOperatorError for non-subdifferential operators.
OracleReport admm_reference(const ResolventProblem& p, double tol = 1e-10,
                            int max_iter = 200000);

/// Reference solve of y in x + lambda*M1(x) + lambda*C^T M2(Cx) for
/// subdifferential M1, M2.
OracleReport admm_reference_sum(const SumResolventProblem& p, double tol = 1e-10,
                                int max_iter = 200000);

/// Reference solve of min 1/2 x^T Q x + q^T x + f(Cx) with Q symmetric
/// positive definite; used by the equilibrium cross-checks.
OracleReport admm_quadratic(const Matrix& Q, const Vector& q, const LinearMap& C,
                            const MonotoneOpPtr& M, double tol = 1e-10,
                            int max_iter = 200000);

/// Certifies a candidate x for y in x + lambda*C^T M(Cx): the minimum
/// over s in M(Cx) of ||C^T s - (y - x)/lambda||, by projected gradient
/// on s. Zero (up to tolerance) certifies x as the resolvent value.
double inclusion_residual(const ResolventProblem& p, const Vector& x);

/// Minimum over s in M(point) of ||C^T s - target||, projected gradient
/// with step 1/||C||^2 from a projected least-squares seed.
double feasibility_distance(const LinearMap& C, const MonotoneOp& M,
                            const Vector& point, const Vector& target,
                            int iterations = 10000);

/// Solves the scalar inclusion x in z + lambda*e*M(z) by bisection on
/// the monotone residual, to width 1e-12. Brackets by doubling expansion
/// up to |z| <= 1e8; throws on bracketing failure.
double scalar_resolvent_bisection(const MonotoneOp& M, double lambda, double e,
                                  double x);

}  // namespace oracle
}  // namespace cresolv
