#include "cresolv/linop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cresolv {

LinearMap::LinearMap(Matrix entries) : mat_(std::move(entries)) {
  if (mat_.rows() < 1 || mat_.cols() < 1) {
    throw std::invalid_argument("LinearMap: dimensions must be positive");
  }
  if (!mat_.allFinite()) {
    throw std::invalid_argument("LinearMap: entries must be finite");
  }
}

LinearMap LinearMap::identity(int n) {
  return LinearMap(Matrix::Identity(n, n));
}

LinearMap LinearMap::zero(int rows, int cols) {
  return LinearMap(Matrix::Zero(rows, cols));
}

Vector LinearMap::apply(const Vector& x) const {
  if (x.size() != mat_.cols()) {
    throw std::invalid_argument("LinearMap::apply: dimension mismatch");
  }
  return mat_ * x;
}

Vector LinearMap::adjoint_apply(const Vector& u) const {
  if (u.size() != mat_.rows()) {
    throw std::invalid_argument("LinearMap::adjoint_apply: dimension mismatch");
  }
  return mat_.transpose() * u;
}

Vector LinearMap::gram_apply(const Vector& v) const {
  if (v.size() != mat_.rows()) {
    throw std::invalid_argument("LinearMap::gram_apply: dimension mismatch");
  }
  return mat_ * (mat_.transpose() * v);
}

namespace {

// Largest eigenvalue of the symmetric PSD map v -> op(v) by power
// iteration with a deterministic start. Returns {eigenvalue, iterations,
// achieved tolerance}.
struct PowerResult {
  double value;
  int iterations;
  double achieved;
};

template <typename Op>
PowerResult power_iteration(int n, const Op& op, double tol, int max_iter) {
  Vector v = Vector::Ones(n);
  v.normalize();
  double est = 0.0;
  double achieved = std::numeric_limits<double>::infinity();
  int used = 0;
  bool perturbed = false;
  for (int k = 0; k < max_iter; ++k) {
    Vector w = op(v);
    double nw = w.norm();
    if (nw <= 1e-300) {
      if (perturbed) return {0.0, k + 1, 0.0};  // operator vanishes: eigenvalue 0
      // start orthogonal to the dominant eigenspace: perturb
      // deterministically and restart
      v = Vector::Ones(n);
      v(0) += 1.0;
      v.normalize();
      perturbed = true;
      continue;
    }
    est = v.dot(w);  // Rayleigh quotient, v is unit
    used = k + 1;
    // residual bounds the distance from est to an eigenvalue (symmetric op)
    achieved = (w - est * v).norm() / std::max(std::abs(est), 1e-300);
    v = w / nw;
    if (achieved <= tol) break;
  }
  return {est, used, achieved};
}

}  // namespace

GramSpectrum estimate_spectrum(const LinearMap& C, double tol, int max_iter) {
  if (tol <= 0) throw std::invalid_argument("estimate_spectrum: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("estimate_spectrum: max_iter must be positive");
  if (C.is_zero()) {
    throw std::invalid_argument("estimate_spectrum: degenerate (zero) operator");
  }
  const int m = C.rows();
  auto top = power_iteration(
      m, [&](const Vector& v) { return C.gram_apply(v); }, tol, max_iter);
  const double op_norm = top.value;
  // smallest eigenvalue via the shifted operator op_norm*I - E
  auto bottom = power_iteration(
      m, [&](const Vector& v) { return Vector(op_norm * v - C.gram_apply(v)); },
      tol, max_iter);
  GramSpectrum s;
  s.op_norm = op_norm;
  // E is PSD; clamp noise outside [0, op_norm]
  s.min_eigen = std::clamp(op_norm - bottom.value, 0.0, op_norm);
  s.norm_C = std::sqrt(op_norm);
  s.iterations_used = top.iterations + bottom.iterations;
  s.tolerance_achieved = std::max(top.achieved, bottom.achieved);
  return s;
}

NonexpansiveCheck nonexpansive_bound_holds(const LinearMap& C, double gamma,
                                           const GramSpectrum& spectrum) {
  (void)C;
  if (gamma < 0) {
    throw std::invalid_argument("nonexpansive_bound_holds: gamma must be >= 0");
  }
  const double lo = std::max(spectrum.min_eigen, 0.0);
  NonexpansiveCheck r;
  r.certificate = std::max(std::abs(1.0 - gamma * spectrum.op_norm),
                           std::abs(1.0 - gamma * lo));
  r.holds = gamma <= 2.0 / spectrum.op_norm;
  return r;
}

}  // namespace cresolv
