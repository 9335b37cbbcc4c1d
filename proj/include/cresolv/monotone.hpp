#pragma once

#include <memory>
#include <stdexcept>

#include "cresolv/linop.hpp"

namespace cresolv {

/// Raised when an operation is asked of an operator that does not
/// support it (e.g. a coordinatewise routine on a non-separable operator).
class UnsupportedOperatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximal monotone operator exposing its resolvent J_{lambda M} and the
/// geometry needed for inclusion certificates. Implementations are
/// immutable and safe for concurrent use.
class MonotoneOp {
 public:
  virtual ~MonotoneOp() = default;

  virtual int dim() const = 0;

  /// J_{lambda M}(x) = (I + lambda M)^{-1} x. Throws for lambda <= 0.
  virtual Vector resolvent(double lambda, const Vector& x) const = 0;

  /// Euclidean distance from candidate to the set M(point). Exact for
  /// every catalog operator; may be +infinity for operators whose domain
  /// excludes point.
  virtual double membership_residual(const Vector& point,
                                     const Vector& candidate) const = 0;

  /// Euclidean projection of s onto M(point); used by feasibility solves.
  /// Throws UnsupportedOperatorError when the set geometry is not
  /// projectable in closed form.
  virtual Vector project_value_set(const Vector& point, const Vector& s) const = 0;

  /// True when M acts coordinatewise, enabling scalar routines.
  virtual bool separable() const { return false; }

  /// Scalar resolvent of coordinate i at threshold parameter t, i.e. the
  /// z solving x in z + t*M_i(z). Only for separable operators.
  virtual double scalar_resolvent(double t, double x, int coord) const {
    (void)t; (void)x; (void)coord;
    throw UnsupportedOperatorError("scalar_resolvent: operator is not separable");
  }

 protected:
  void check_dim(const Vector& v, const char* what) const {
    if (v.size() != dim()) {
      throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
  }
  static void check_lambda(double lambda) {
    if (!(lambda > 0)) {
      throw std::invalid_argument("resolvent: lambda must be positive");
    }
  }
};

using MonotoneOpPtr = std::shared_ptr<const MonotoneOp>;

/// Subdifferential of the l1 norm. Resolvent is coordinatewise soft
/// thresholding; the value set at a point is a box-like set (singleton
/// {sign(x_i)} off the kink, [-1,1] at it).
class L1Subdifferential final : public MonotoneOp {
 public:
  explicit L1Subdifferential(int dim);
  int dim() const override { return dim_; }
  Vector resolvent(double lambda, const Vector& x) const override;
  double membership_residual(const Vector& point,
                             const Vector& candidate) const override;
  Vector project_value_set(const Vector& point, const Vector& s) const override;
  bool separable() const override { return true; }
  double scalar_resolvent(double t, double x, int coord) const override;

  /// Iterates this close to a kink are treated as sitting on it.
  static constexpr double kKinkBand = 1e-9;

 private:
  int dim_;
};

/// Normal cone of the box [lower, upper] (subdifferential of its
/// indicator). Resolvent is the componentwise clamp, independent of
/// lambda. Infinite bounds allowed.
class BoxIndicatorSubdifferential final : public MonotoneOp {
 public:
  BoxIndicatorSubdifferential(Vector lower, Vector upper);
  int dim() const override { return dim_; }
  Vector resolvent(double lambda, const Vector& x) const override;
  double membership_residual(const Vector& point,
                             const Vector& candidate) const override;
  Vector project_value_set(const Vector& point, const Vector& s) const override;
  bool separable() const override { return true; }
  double scalar_resolvent(double t, double x, int coord) const override;

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

 private:
  int dim_;
  Vector lower_, upper_;
};

/// x -> Ax + b with A + A^T positive semidefinite. Resolvent solves
/// (I + lambda A) z = x - lambda b.
class LinearMonotoneOp final : public MonotoneOp {
 public:
  LinearMonotoneOp(Matrix A, Vector b);
  int dim() const override { return dim_; }
  Vector resolvent(double lambda, const Vector& x) const override;
  double membership_residual(const Vector& point,
                             const Vector& candidate) const override;
  Vector project_value_set(const Vector& point, const Vector& s) const override;

  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  /// Smallest eigenvalue of (A + A^T)/2; >= -1e-10 by construction.
  double monotonicity_certificate() const { return certificate_; }

 private:
  int dim_;
  Matrix A_;
  Vector b_;
  double certificate_;
};

/// M(x) = {0}; resolvent is the identity.
class ZeroOp final : public MonotoneOp {
 public:
  explicit ZeroOp(int dim);
  int dim() const override { return dim_; }
  Vector resolvent(double lambda, const Vector& x) const override;
  double membership_residual(const Vector& point,
                             const Vector& candidate) const override;
  Vector project_value_set(const Vector& point, const Vector& s) const override;
  bool separable() const override { return true; }
  double scalar_resolvent(double t, double x, int coord) const override;

 private:
  int dim_;
};

/// Yosida approximation M_index(x) = (x - J_{index M}(x)) / index.
/// Throws for index <= 0.
Vector yosida(const MonotoneOp& M, double index, const Vector& x);

/// Resolvent of lambda*diag(e)*M for separable M and positive e:
/// coordinate i solves x_i in z_i + lambda*e_i*M_i(z_i).
Vector diag_scaled_resolvent(const MonotoneOp& M, double lambda,
                             const Vector& e, const Vector& x);

}  // namespace cresolv
