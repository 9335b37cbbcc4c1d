#include "cresolv/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cresolv {
namespace oracle {

namespace {

bool is_prox_friendly(const MonotoneOp& M) {
  return dynamic_cast<const L1Subdifferential*>(&M) != nullptr ||
         dynamic_cast<const BoxIndicatorSubdifferential*>(&M) != nullptr;
}

void require_prox_friendly(const MonotoneOp& M, const char* who) {
  if (!is_prox_friendly(M)) {
    throw UnsupportedOperatorError(
        std::string(who) +
        ": only subdifferential catalog operators (l1, box) are supported; "
        "compare against fixed-point residual certification instead");
  }
}

double spectral_norm_sq(const LinearMap& C) {
  // exact dense computation; the oracle deliberately avoids the power
  // iteration used by the solver path
  Eigen::SelfAdjointEigenSolver<Matrix> es(C.matrix() * C.matrix().transpose());
  return es.eigenvalues().maxCoeff();
}

}  // namespace

// min 1/2 x^T Q x + q^T x + f_scale * f(Cx), split z = Cx
OracleReport admm_quadratic(const Matrix& Q, const Vector& q, const LinearMap& C,
                            const MonotoneOpPtr& M, double f_scale, double tol,
                            int max_iter) {
  require_prox_friendly(*M, "admm_quadratic");
  const double rho = 1.0;
  const int n = C.cols();
  const int m = C.rows();
  const Matrix& Cm = C.matrix();
  Eigen::LDLT<Matrix> solver(Q + rho * Cm.transpose() * Cm);
  if (solver.info() != Eigen::Success) {
    throw std::invalid_argument("admm_quadratic: quadratic term is not positive definite");
  }
  Vector x = Vector::Zero(n);
  Vector z = Vector::Zero(m);
  Vector u = Vector::Zero(m);
  OracleReport r;
  for (int k = 0; k < max_iter; ++k) {
    x = solver.solve(-q + rho * Cm.transpose() * (z - u));
    Vector Cx = Cm * x;
    Vector z_old = z;
    z = M->resolvent(f_scale / rho, Cx + u);
    u += Cx - z;
    r.primal_residual = (Cx - z).norm();
    r.dual_residual = rho * (Cm.transpose() * (z - z_old)).norm();
    r.iterations = k + 1;
    if (r.primal_residual <= tol && r.dual_residual <= tol) break;
  }
  r.x_ref = x;
  return r;
}

OracleReport admm_quadratic(const Matrix& Q, const Vector& q, const LinearMap& C,
                            const MonotoneOpPtr& M, double tol, int max_iter) {
  return admm_quadratic(Q, q, C, M, 1.0, tol, max_iter);
}

OracleReport admm_reference(const ResolventProblem& p, double tol, int max_iter) {
  require_prox_friendly(*p.M, "admm_reference");
  const int n = p.C.cols();
  return admm_quadratic(Matrix::Identity(n, n), -p.y, p.C, p.M, p.lambda, tol,
                        max_iter);
}

OracleReport admm_reference_sum(const SumResolventProblem& p, double tol,
                                int max_iter) {
  require_prox_friendly(*p.M1, "admm_reference_sum");
  require_prox_friendly(*p.M2, "admm_reference_sum");
  // min 1/2||x-y||^2 + lambda f1(z1) + lambda f2(z2), z1 = x, z2 = Cx
  const double rho = 1.0;
  const int n = p.C.cols();
  const int m = p.C.rows();
  const Matrix& Cm = p.C.matrix();
  Eigen::LDLT<Matrix> solver(Matrix::Identity(n, n) * (1.0 + rho) +
                             rho * Cm.transpose() * Cm);
  Vector x = Vector::Zero(n);
  Vector z1 = Vector::Zero(n), z2 = Vector::Zero(m);
  Vector u1 = Vector::Zero(n), u2 = Vector::Zero(m);
  OracleReport r;
  for (int k = 0; k < max_iter; ++k) {
    x = solver.solve(p.y + rho * (z1 - u1) + rho * Cm.transpose() * (z2 - u2));
    Vector Cx = Cm * x;
    Vector z1_old = z1, z2_old = z2;
    z1 = p.M1->resolvent(p.lambda / rho, x + u1);
    z2 = p.M2->resolvent(p.lambda / rho, Cx + u2);
    u1 += x - z1;
    u2 += Cx - z2;
    r.primal_residual =
        std::sqrt((x - z1).squaredNorm() + (Cx - z2).squaredNorm());
    r.dual_residual =
        rho * ((z1 - z1_old) + Cm.transpose() * (z2 - z2_old)).norm();
    r.iterations = k + 1;
    if (r.primal_residual <= tol && r.dual_residual <= tol) break;
  }
  r.x_ref = x;
  return r;
}

double feasibility_distance(const LinearMap& C, const MonotoneOp& M,
                            const Vector& point, const Vector& target,
                            int iterations) {
  const Matrix Ct = C.matrix().transpose();
  // least-squares seed, then project into the value set
  Vector s = Ct.completeOrthogonalDecomposition().solve(target);
  s = M.project_value_set(point, s);
  const double step = 1.0 / spectral_norm_sq(C);
  for (int k = 0; k < iterations; ++k) {
    Vector grad = C.apply(Ct * s - target);
    s = M.project_value_set(point, s - step * grad);
  }
  return (Ct * s - target).norm();
}

double inclusion_residual(const ResolventProblem& p, const Vector& x) {
  if (x.size() != p.C.cols()) {
    throw std::invalid_argument("inclusion_residual: candidate dimension mismatch");
  }
  Vector target = (p.y - x) / p.lambda;
  return feasibility_distance(p.C, *p.M, p.C.apply(x), target);
}

double scalar_resolvent_bisection(const MonotoneOp& M, double lambda, double e,
                                  double x) {
  if (M.dim() != 1) {
    throw std::invalid_argument("scalar_resolvent_bisection: operator must be scalar");
  }
  if (!(lambda > 0) || !(e > 0)) {
    throw std::invalid_argument("scalar_resolvent_bisection: lambda and e must be positive");
  }
  const double le = lambda * e;
  Vector xv(1);
  xv(0) = x;
  // a feasible reference point for sided-ness when M(z) is empty
  const double z_feasible = M.resolvent(1.0, xv)(0);

  // signed residual of the inclusion x in z + le*M(z): positive means z
  // is too small, negative too large; monotone nonincreasing in z
  auto residual = [&](double z) -> double {
    Vector zv(1), tv(1);
    zv(0) = z;
    tv(0) = (x - z) / le;
    try {
      double m = M.project_value_set(zv, tv)(0);
      return x - z - le * m;
    } catch (const UnsupportedOperatorError&) {
      return z < z_feasible ? 1.0 : -1.0;  // outside dom M
    }
  };

  double lo = x - 1.0, hi = x + 1.0;
  double width = 1.0;
  while (residual(lo) < 0.0) {
    width *= 2.0;
    lo = x - width;
    if (std::abs(lo) > 1e8) {
      throw std::runtime_error("scalar_resolvent_bisection: bracketing failed (low side)");
    }
  }
  width = 1.0;
  while (residual(hi) > 0.0) {
    width *= 2.0;
    hi = x + width;
    if (std::abs(hi) > 1e8) {
      throw std::runtime_error("scalar_resolvent_bisection: bracketing failed (high side)");
    }
  }
  // The residual can vanish on a short plateau (the kink tolerance band
  // inflates subdifferential sets); locate both edges of {r = 0} and
  // return their midpoint. On the plateau the computed residual is
  // rounding noise of either sign, so compare against a noise floor
  // rather than exact zero.
  const double zero_tol = 1e-12 * (1.0 + std::abs(x) + le);
  auto bisect = [&](double a, double b, bool strict) {
    while (b - a > 1e-13) {
      double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;  // float resolution exhausted
      double r = residual(mid);
      if (strict ? (r > zero_tol) : (r >= -zero_tol)) {
        a = mid;
      } else {
        b = mid;
      }
    }
    return 0.5 * (a + b);
  };
  double upper_edge = bisect(lo, hi, false);  // sup {z : r(z) >= 0}
  double lower_edge = bisect(lo, hi, true);   // inf {z : r(z) <= 0}
  return 0.5 * (lower_edge + upper_edge);
}

}  // namespace oracle
}  // namespace cresolv
