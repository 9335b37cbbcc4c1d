#pragma once

#include "cresolv/composite.hpp"

namespace cresolv {

/// Set-valued feedback system whose equilibria solve
/// 0 in P f(x) + C^T M(Cx), with f(x) = Ax + b affine and PB = C^T.
struct LureSystem {
  Matrix A;     // n x n
  Vector b;     // n
  LinearMap B;  // m -> n
  LinearMap C;  // n -> m
  Matrix P;     // n x n symmetric positive definite, PB = C^T
  MonotoneOpPtr M;

  /// Validates dimensions, symmetry/definiteness of P and the structural
  /// identity PB = C^T (to 1e-10).
  LureSystem(Matrix A_, Vector b_, LinearMap B_, LinearMap C_, Matrix P_,
             MonotoneOpPtr M_);

  /// Convenience constructor with P = I, requiring B = C^T.
  static LureSystem with_identity_p(Matrix A, Vector b, LinearMap C,
                                    MonotoneOpPtr M);

  Vector f(const Vector& x) const { return A * x + b; }

  /// Smallest eigenvalue of (PA + (PA)^T)/2; positive means Pf is
  /// strongly monotone (reported, not enforced).
  double strong_monotonicity_certificate() const;
};

struct EquilibriumReport {
  Vector x_star;
  int outer_iterations = 0;
  double equilibrium_residual = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
};

/// Forward-backward iteration x <- J_{step*C^T M C}(x - step*P*f(x)),
/// with the composite resolvent computed by the averaged fixed-point
/// solver (warm-started across outer iterations).
EquilibriumReport find_equilibrium(const LureSystem& sys, double step, double tol,
                                   int max_outer, const SolveOptions& inner_opts);

/// min over s in M(Cx) of ||P f(x) + C^T s||.
double equilibrium_residual(const LureSystem& sys, const Vector& x);

}  // namespace cresolv
