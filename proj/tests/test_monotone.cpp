#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cresolv/monotone.hpp"
#include "cresolv/oracle.hpp"
#include "support.hpp"

using namespace cresolv;
using testsupport::random_monotone_matrix;
using testsupport::random_vector;

namespace {

Vector scalar(double v) {
  Vector x(1);
  x(0) = v;
  return x;
}

std::vector<MonotoneOpPtr> catalog(int dim, std::mt19937_64& rng) {
  Vector lo = random_vector(rng, dim, 2.0);
  Vector hi = lo + random_vector(rng, dim).cwiseAbs() + Vector::Constant(dim, 0.1);
  return {
      std::make_shared<L1Subdifferential>(dim),
      std::make_shared<BoxIndicatorSubdifferential>(lo, hi),
      std::make_shared<LinearMonotoneOp>(random_monotone_matrix(rng, dim),
                                         random_vector(rng, dim)),
      std::make_shared<ZeroOp>(dim),
  };
}

}  // namespace

TEST_CASE("resolvent examples") {
  L1Subdifferential l1(1);
  CHECK(l1.resolvent(1.0, scalar(3.0))(0) == 2.0);
  CHECK(l1.resolvent(1.0, scalar(-0.5))(0) == 0.0);

  ZeroOp zero(3);
  Vector x(3);
  x << 1, -2, 3;
  CHECK(zero.resolvent(0.5, x) == x);

  CHECK_THROWS_AS(l1.resolvent(0.0, scalar(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(l1.resolvent(-1.0, scalar(1.0)), std::invalid_argument);
}

TEST_CASE("yosida examples") {
  L1Subdifferential l1(1);
  CHECK(yosida(l1, 1.0, scalar(3.0))(0) == 1.0);
  CHECK(yosida(l1, 1.0, scalar(0.0))(0) == 0.0);

  LinearMonotoneOp lin((Matrix(1, 1) << 2).finished(), Vector::Zero(1));
  CHECK(yosida(lin, 0.5, scalar(1.0))(0) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(yosida(l1, 0.0, scalar(1.0)), std::invalid_argument);
}

TEST_CASE("diag_scaled_resolvent examples") {
  L1Subdifferential l1a(1);
  CHECK(diag_scaled_resolvent(l1a, 1.0, scalar(2.0), scalar(3.0))(0) == 1.0);
  CHECK(diag_scaled_resolvent(l1a, 0.5, scalar(4.0), scalar(-5.0))(0) == -3.0);

  L1Subdifferential l1b(2);
  Vector e = Vector::Ones(2);
  Vector x(2);
  x << 3, -0.5;
  Vector z = diag_scaled_resolvent(l1b, 1.0, e, x);
  CHECK(z(0) == 2.0);
  CHECK(z(1) == 0.0);

  LinearMonotoneOp lin(Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK_THROWS_AS(diag_scaled_resolvent(lin, 1.0, e, x), UnsupportedOperatorError);
  CHECK_THROWS_AS(diag_scaled_resolvent(l1b, 1.0, scalar(0.0).replicate(2, 1), x),
                  std::invalid_argument);
}

TEST_CASE("membership_residual examples") {
  L1Subdifferential l1(1);
  CHECK(l1.membership_residual(scalar(2.0), scalar(1.0)) == 0.0);
  CHECK(l1.membership_residual(scalar(0.0), scalar(1.5)) == doctest::Approx(0.5));

  ZeroOp zero(2);
  Vector c(2);
  c << 3, 4;
  CHECK(zero.membership_residual(Vector::Zero(2), c) == doctest::Approx(5.0));

  BoxIndicatorSubdifferential box(scalar(-1.0), scalar(1.0));
  CHECK(box.membership_residual(scalar(0.0), scalar(2.0)) == doctest::Approx(2.0));
  CHECK(box.membership_residual(scalar(1.0), scalar(2.0)) == 0.0);
  CHECK(box.membership_residual(scalar(5.0), scalar(0.0)) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("linear operator monotonicity is certified") {
  Matrix bad(2, 2);
  bad << -1, 0, 0, -1;
  CHECK_THROWS_AS(LinearMonotoneOp(bad, Vector::Zero(2)), std::invalid_argument);
}

TEST_CASE("firm nonexpansiveness of catalog resolvents") {
  std::mt19937_64 rng(101);
  const int dim = 4;
  for (const auto& M : catalog(dim, rng)) {
    for (double lambda : {0.01, 1.0, 100.0}) {
      for (int t = 0; t < 500 / 3; ++t) {
        Vector x = random_vector(rng, dim, 5.0);
        Vector y = random_vector(rng, dim, 5.0);
        Vector Jx = M->resolvent(lambda, x);
        Vector Jy = M->resolvent(lambda, y);
        CHECK((Jx - Jy).dot(x - y) >= (Jx - Jy).squaredNorm() - 1e-10);
      }
    }
  }
}

TEST_CASE("yosida membership and lipschitz invariants") {
  std::mt19937_64 rng(103);
  const int dim = 3;
  for (const auto& M : catalog(dim, rng)) {
    for (int t = 0; t < 500 / 4; ++t) {
      double lambda = std::exp(std::uniform_real_distribution<double>(-2, 2)(rng));
      Vector x = random_vector(rng, dim, 5.0);
      Vector y = random_vector(rng, dim, 5.0);
      Vector mx = yosida(*M, lambda, x);
      Vector my = yosida(*M, lambda, y);
      // value lands in M at the resolvent point
      CHECK(M->membership_residual(M->resolvent(lambda, x), mx) <= 1e-10);
      // (1/lambda)-Lipschitz
      CHECK((mx - my).norm() <= (x - y).norm() / lambda + 1e-10);
      // resolvent identity, exact up to the divide/multiply round-trip
      CHECK((x - M->resolvent(lambda, x) - lambda * mx).norm() <=
            1e-15 * (1.0 + x.norm()));
    }
  }
}

TEST_CASE("diag_scaled_resolvent with unit weights equals resolvent") {
  std::mt19937_64 rng(107);
  L1Subdifferential l1(5);
  Vector e = Vector::Ones(5);
  for (int t = 0; t < 50; ++t) {
    double lambda = std::exp(std::uniform_real_distribution<double>(-2, 2)(rng));
    Vector x = random_vector(rng, 5, 5.0);
    CHECK(diag_scaled_resolvent(l1, lambda, e, x) == l1.resolvent(lambda, x));
  }
}

TEST_CASE("diagonal-weight identity against the bisection oracle") {
  // (1/lambda) diag(e)^-1 (x - J) recovers the scaled Yosida value
  // computed independently per coordinate
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> unit(0.1, 3.0);
  for (int dim = 1; dim <= 5; ++dim) {
    L1Subdifferential l1(dim);
    L1Subdifferential l1_scalar(1);
    for (int t = 0; t < 20; ++t) {
      double lambda = unit(rng);
      Vector e(dim), x = random_vector(rng, dim, 4.0);
      for (int i = 0; i < dim; ++i) e(i) = unit(rng);
      Vector J = diag_scaled_resolvent(l1, lambda, e, x);
      for (int i = 0; i < dim; ++i) {
        double z = cresolv::oracle::scalar_resolvent_bisection(l1_scalar, lambda,
                                                               e(i), x(i));
        double lhs = (x(i) - J(i)) / (lambda * e(i));
        double rhs = (x(i) - z) / (lambda * e(i));
        CHECK(std::abs(lhs - rhs) <= 1e-8);
      }
    }
  }
}
