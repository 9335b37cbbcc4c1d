#pragma once

#include <Eigen/Dense>

namespace cresolv {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense linear operator C between finite-dimensional spaces, with access
/// to its adjoint C^T and the Gram operator E = CC^T.
class LinearMap {
 public:
  /// Throws std::invalid_argument if entries contain NaN/Inf or the
  /// dimensions are not positive.
  explicit LinearMap(Matrix entries);

  static LinearMap identity(int n);
  static LinearMap zero(int rows, int cols);

  int rows() const { return static_cast<int>(mat_.rows()); }
  int cols() const { return static_cast<int>(mat_.cols()); }
  const Matrix& matrix() const { return mat_; }
  bool is_zero() const { return mat_.isZero(0.0); }

  /// Cx
  Vector apply(const Vector& x) const;
  /// C^T u
  Vector adjoint_apply(const Vector& u) const;
  /// CC^T v
  Vector gram_apply(const Vector& v) const;

  LinearMap adjoint() const { return LinearMap(mat_.transpose()); }

 private:
  Matrix mat_;
};

/// Extremal eigenvalue estimates of the Gram operator E = CC^T.
struct GramSpectrum {
  double op_norm = 0.0;    // largest eigenvalue of E, equals ||C||^2
  double min_eigen = 0.0;  // smallest eigenvalue of E
  double norm_C = 0.0;     // sqrt(op_norm) = ||C||
  int iterations_used = 0;
  double tolerance_achieved = 0.0;
};

/// Power iteration on E for the largest eigenvalue, then on
/// (op_norm*I - E) for the smallest. Deterministic all-ones start;
/// restarts with +e1 if the start is orthogonal to the dominant
/// eigenspace. Throws on a zero operator.
GramSpectrum estimate_spectrum(const LinearMap& C, double tol = 1e-10,
                               int max_iter = 100000);

struct NonexpansiveCheck {
  bool holds = false;       // gamma in [0, 2/||C||^2]
  double certificate = 0.0; // ||I - gamma*CC^T||
};

/// Checks gamma in [0, 2/||C||^2] and returns ||I - gamma*E|| computed
/// from the extremal eigenvalues of the symmetric PSD operator E.
/// Throws std::invalid_argument for gamma < 0.
NonexpansiveCheck nonexpansive_bound_holds(const LinearMap& C, double gamma,
                                           const GramSpectrum& spectrum);

}  // namespace cresolv
