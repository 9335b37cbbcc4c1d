// Shared test helpers: dense eigen-decomposition oracles and seeded
// random instance generators. Test-only; the library path never calls
// into these.
#pragma once

#include <random>

#include <Eigen/Eigenvalues>

#include "cresolv/composite.hpp"

namespace testsupport {

using cresolv::Matrix;
using cresolv::Vector;

// exact largest/smallest eigenvalues of CC^T
inline std::pair<double, double> gram_extremes_exact(const Matrix& C) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(C * C.transpose());
  return {es.eigenvalues().maxCoeff(), es.eigenvalues().minCoeff()};
}

// exact spectral norm of I - gamma*CC^T
inline double shifted_norm_exact(const Matrix& C, double gamma) {
  const auto n = C.rows();
  Matrix S = Matrix::Identity(n, n) - gamma * C * C.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols,
                            double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline Vector random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

// m x n (m <= n) with singular values drawn from [smin, smax]: keeps the
// Gram operator CC^T positive definite with controlled conditioning
inline Matrix random_conditioned_matrix(std::mt19937_64& rng, int m, int n,
                                        double smin = 0.7, double smax = 2.0) {
  Eigen::HouseholderQR<Matrix> qru(random_matrix(rng, m, m));
  Eigen::HouseholderQR<Matrix> qrv(random_matrix(rng, n, n));
  Matrix U = qru.householderQ();
  Matrix V = qrv.householderQ();
  std::uniform_real_distribution<double> sv(smin, smax);
  Matrix S = Matrix::Zero(m, n);
  for (int i = 0; i < m; ++i) S(i, i) = sv(rng);
  return U * S * V.transpose();
}

// square matrix with A + A^T positive definite
inline Matrix random_monotone_matrix(std::mt19937_64& rng, int n) {
  Matrix G = random_matrix(rng, n, n);
  Matrix skew = random_matrix(rng, n, n);
  return G * G.transpose() + 0.1 * Matrix::Identity(n, n) +
         0.5 * (skew - skew.transpose());
}

}  // namespace testsupport
