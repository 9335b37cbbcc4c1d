#include "cresolv/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace cresolv {

namespace {

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

double soft_threshold(double x, double t) {
  return std::max(std::abs(x) - t, 0.0) * sgn(x);
}

}  // namespace

// ---------------------------------------------------------------- L1

L1Subdifferential::L1Subdifferential(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("L1Subdifferential: dim must be positive");
}

Vector L1Subdifferential::resolvent(double lambda, const Vector& x) const {
  check_lambda(lambda);
  check_dim(x, "L1Subdifferential::resolvent");
  Vector z(dim_);
  for (int i = 0; i < dim_; ++i) z(i) = soft_threshold(x(i), lambda);
  return z;
}

double L1Subdifferential::scalar_resolvent(double t, double x, int) const {
  return soft_threshold(x, t);
}

double L1Subdifferential::membership_residual(const Vector& point,
                                              const Vector& candidate) const {
  check_dim(point, "L1Subdifferential::membership_residual");
  check_dim(candidate, "L1Subdifferential::membership_residual");
  return (candidate - project_value_set(point, candidate)).norm();
}

Vector L1Subdifferential::project_value_set(const Vector& point,
                                            const Vector& s) const {
  check_dim(point, "L1Subdifferential::project_value_set");
  check_dim(s, "L1Subdifferential::project_value_set");
  Vector p(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (std::abs(point(i)) <= kKinkBand) {
      p(i) = std::clamp(s(i), -1.0, 1.0);
    } else {
      p(i) = sgn(point(i));
    }
  }
  return p;
}

// ---------------------------------------------------------------- Box

BoxIndicatorSubdifferential::BoxIndicatorSubdifferential(Vector lower, Vector upper)
    : dim_(static_cast<int>(lower.size())),
      lower_(std::move(lower)),
      upper_(std::move(upper)) {
  if (dim_ < 1 || upper_.size() != dim_) {
    throw std::invalid_argument("BoxIndicatorSubdifferential: bad bounds");
  }
  for (int i = 0; i < dim_; ++i) {
    if (!(lower_(i) <= upper_(i))) {
      throw std::invalid_argument("BoxIndicatorSubdifferential: lower > upper");
    }
  }
}

Vector BoxIndicatorSubdifferential::resolvent(double lambda, const Vector& x) const {
  check_lambda(lambda);
  check_dim(x, "BoxIndicatorSubdifferential::resolvent");
  Vector z(dim_);
  for (int i = 0; i < dim_; ++i) z(i) = std::clamp(x(i), lower_(i), upper_(i));
  return z;
}

double BoxIndicatorSubdifferential::scalar_resolvent(double, double x, int coord) const {
  return std::clamp(x, lower_(coord), upper_(coord));
}

Vector BoxIndicatorSubdifferential::project_value_set(const Vector& point,
                                                      const Vector& s) const {
  check_dim(point, "BoxIndicatorSubdifferential::project_value_set");
  check_dim(s, "BoxIndicatorSubdifferential::project_value_set");
  constexpr double band = 1e-9;
  Vector p(dim_);
  for (int i = 0; i < dim_; ++i) {
    const bool at_lo = point(i) <= lower_(i) + band;
    const bool at_hi = point(i) >= upper_(i) - band;
    if (point(i) < lower_(i) - band || point(i) > upper_(i) + band) {
      throw UnsupportedOperatorError(
          "BoxIndicatorSubdifferential: point outside the box has empty value set");
    }
    if (at_lo && at_hi) {
      p(i) = s(i);  // degenerate interval, normal cone is all of R
    } else if (at_lo) {
      p(i) = std::min(s(i), 0.0);
    } else if (at_hi) {
      p(i) = std::max(s(i), 0.0);
    } else {
      p(i) = 0.0;
    }
  }
  return p;
}

double BoxIndicatorSubdifferential::membership_residual(const Vector& point,
                                                        const Vector& candidate) const {
  check_dim(point, "BoxIndicatorSubdifferential::membership_residual");
  check_dim(candidate, "BoxIndicatorSubdifferential::membership_residual");
  constexpr double band = 1e-9;
  for (int i = 0; i < dim_; ++i) {
    if (point(i) < lower_(i) - band || point(i) > upper_(i) + band) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return (candidate - project_value_set(point, candidate)).norm();
}

// ------------------------------------------------------------- Linear

LinearMonotoneOp::LinearMonotoneOp(Matrix A, Vector b)
    : dim_(static_cast<int>(A.rows())), A_(std::move(A)), b_(std::move(b)) {
  if (dim_ < 1 || A_.cols() != dim_ || b_.size() != dim_) {
    throw std::invalid_argument("LinearMonotoneOp: inconsistent dimensions");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (A_ + A_.transpose()));
  certificate_ = es.eigenvalues().minCoeff();
  if (certificate_ < -1e-10) {
    throw std::invalid_argument("LinearMonotoneOp: A + A^T is not positive semidefinite");
  }
}

Vector LinearMonotoneOp::resolvent(double lambda, const Vector& x) const {
  check_lambda(lambda);
  check_dim(x, "LinearMonotoneOp::resolvent");
  Matrix lhs = Matrix::Identity(dim_, dim_) + lambda * A_;
  return lhs.partialPivLu().solve(x - lambda * b_);
}

double LinearMonotoneOp::membership_residual(const Vector& point,
                                             const Vector& candidate) const {
  check_dim(point, "LinearMonotoneOp::membership_residual");
  check_dim(candidate, "LinearMonotoneOp::membership_residual");
  return (candidate - (A_ * point + b_)).norm();
}

Vector LinearMonotoneOp::project_value_set(const Vector& point, const Vector& s) const {
  check_dim(point, "LinearMonotoneOp::project_value_set");
  (void)s;
  return A_ * point + b_;  // singleton
}

// --------------------------------------------------------------- Zero

ZeroOp::ZeroOp(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("ZeroOp: dim must be positive");
}

Vector ZeroOp::resolvent(double lambda, const Vector& x) const {
  check_lambda(lambda);
  check_dim(x, "ZeroOp::resolvent");
  return x;
}

double ZeroOp::scalar_resolvent(double, double x, int) const { return x; }

double ZeroOp::membership_residual(const Vector& point, const Vector& candidate) const {
  check_dim(point, "ZeroOp::membership_residual");
  check_dim(candidate, "ZeroOp::membership_residual");
  return candidate.norm();
}

Vector ZeroOp::project_value_set(const Vector& point, const Vector&) const {
  check_dim(point, "ZeroOp::project_value_set");
  return Vector::Zero(dim_);
}

// ------------------------------------------------------- free helpers

Vector yosida(const MonotoneOp& M, double index, const Vector& x) {
  if (!(index > 0)) throw std::invalid_argument("yosida: index must be positive");
  return (x - M.resolvent(index, x)) / index;
}

Vector diag_scaled_resolvent(const MonotoneOp& M, double lambda,
                             const Vector& e, const Vector& x) {
  if (!(lambda > 0)) {
    throw std::invalid_argument("diag_scaled_resolvent: lambda must be positive");
  }
  if (!M.separable()) {
    throw UnsupportedOperatorError(
        "diag_scaled_resolvent: operator is not coordinatewise separable");
  }
  if (e.size() != M.dim() || x.size() != M.dim()) {
    throw std::invalid_argument("diag_scaled_resolvent: dimension mismatch");
  }
  Vector z(x.size());
  for (int i = 0; i < x.size(); ++i) {
    if (!(e(i) > 0)) {
      throw std::invalid_argument("diag_scaled_resolvent: e must be positive");
    }
    z(i) = M.scalar_resolvent(lambda * e(i), x(i), i);
  }
  return z;
}

}  // namespace cresolv
