#include "cresolv/lure.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cresolv/oracle.hpp"

namespace cresolv {

LureSystem::LureSystem(Matrix A_, Vector b_, LinearMap B_, LinearMap C_, Matrix P_,
                       MonotoneOpPtr M_)
    : A(std::move(A_)),
      b(std::move(b_)),
      B(std::move(B_)),
      C(std::move(C_)),
      P(std::move(P_)),
      M(std::move(M_)) {
  const int n = static_cast<int>(A.rows());
  const int m = C.rows();
  if (A.cols() != n || b.size() != n) {
    throw std::invalid_argument("LureSystem: A must be square and match b");
  }
  if (B.rows() != n || B.cols() != m || C.cols() != n) {
    throw std::invalid_argument("LureSystem: B must map m->n and C must map n->m");
  }
  if (P.rows() != n || P.cols() != n) {
    throw std::invalid_argument("LureSystem: P must be n x n");
  }
  if (!M || M->dim() != m) {
    throw std::invalid_argument("LureSystem: M must act on the output space");
  }
  if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("LureSystem: P must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(P);
  if (es.eigenvalues().minCoeff() <= 0) {
    throw std::invalid_argument("LureSystem: P must be positive definite");
  }
  if ((P * B.matrix() - C.matrix().transpose()).norm() > 1e-10) {
    throw std::invalid_argument("LureSystem: structural identity PB = C^T violated");
  }
}

LureSystem LureSystem::with_identity_p(Matrix A, Vector b, LinearMap C,
                                       MonotoneOpPtr M) {
  const int n = static_cast<int>(A.rows());
  LinearMap B(C.matrix().transpose());
  return LureSystem(std::move(A), std::move(b), std::move(B), std::move(C),
                    Matrix::Identity(n, n), std::move(M));
}

double LureSystem::strong_monotonicity_certificate() const {
  Matrix PA = P * A;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (PA + PA.transpose()));
  return es.eigenvalues().minCoeff();
}

double equilibrium_residual(const LureSystem& sys, const Vector& x) {
  if (x.size() != sys.A.rows()) {
    throw std::invalid_argument("equilibrium_residual: dimension mismatch");
  }
  Vector target = -(sys.P * sys.f(x));
  return oracle::feasibility_distance(sys.C, *sys.M, sys.C.apply(x), target);
}

EquilibriumReport find_equilibrium(const LureSystem& sys, double step, double tol,
                                   int max_outer, const SolveOptions& inner_opts) {
  if (!(step > 0)) throw std::invalid_argument("find_equilibrium: step must be positive");
  if (!(tol > 0)) throw std::invalid_argument("find_equilibrium: tol must be positive");
  const int n = static_cast<int>(sys.A.rows());
  Vector x = Vector::Zero(n);
  EquilibriumReport rep;
  SolveOptions inner = inner_opts;
  bool step_converged = false;
  for (int k = 0; k < max_outer; ++k) {
    Vector y = x - step * (sys.P * sys.f(x));
    ResolventProblem p(sys.C, sys.M, step, y);
    SolveReport inner_rep;
    try {
      inner_rep = solve_algorithm2(p, inner);
    } catch (const std::exception& e) {
      throw std::runtime_error("find_equilibrium: inner solve failed at outer iteration " +
                               std::to_string(k) + ": " + e.what());
    }
    if (!inner_rep.converged) {
      throw std::runtime_error(
          "find_equilibrium: inner solver did not converge at outer iteration " +
          std::to_string(k));
    }
    inner.warm_start = inner_rep.fixed_point;
    double dx = (inner_rep.x - x).norm();
    x = inner_rep.x;
    rep.outer_iterations = k + 1;
    if (dx <= tol) {
      step_converged = true;
      break;
    }
  }
  rep.x_star = x;
  rep.equilibrium_residual = equilibrium_residual(sys, x);
  rep.converged = step_converged && rep.equilibrium_residual <= tol;
  return rep;
}

}  // namespace cresolv
