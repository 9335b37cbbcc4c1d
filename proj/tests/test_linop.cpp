#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cresolv/linop.hpp"
#include "cresolv/repro.hpp"
#include "support.hpp"

using namespace cresolv;
using testsupport::gram_extremes_exact;
using testsupport::random_matrix;
using testsupport::random_vector;
using testsupport::shifted_norm_exact;

TEST_CASE("apply") {
  Vector x(3);
  x << 1, 2, 3;
  CHECK(LinearMap::identity(3).apply(x) == x);

  Vector z(2);
  z << 5, 7;
  CHECK(LinearMap::zero(2, 2).apply(z).isZero());

  Vector e1 = Vector::Zero(5);
  e1(0) = 1;
  Vector col = repro::demo_matrix().apply(e1);
  Vector expected(5);
  expected << 1, 2, 7, 2, 2;
  CHECK(col == expected);

  CHECK_THROWS_AS(LinearMap::identity(3).apply(z), std::invalid_argument);
}

TEST_CASE("adjoint_apply") {
  Vector u(3);
  u << 1, 2, 3;
  CHECK(LinearMap::identity(3).adjoint_apply(u) == u);

  std::mt19937_64 rng(7);
  LinearMap C(random_matrix(rng, 3, 2));
  CHECK(C.adjoint_apply(Vector::Zero(3)).isZero());

  // inner-product adjoint identity
  Vector x = random_vector(rng, 2);
  Vector v = random_vector(rng, 3);
  CHECK(C.apply(x).dot(v) == doctest::Approx(x.dot(C.adjoint_apply(v))).epsilon(1e-12));

  CHECK_THROWS_AS(C.adjoint_apply(x), std::invalid_argument);
}

TEST_CASE("adjoint identity property") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + static_cast<int>(rng() % 6);
    int n = 1 + static_cast<int>(rng() % 6);
    LinearMap C(random_matrix(rng, m, n, 3.0));
    Vector x = random_vector(rng, n, 5.0);
    Vector u = random_vector(rng, m, 5.0);
    double lhs = C.apply(x).dot(u);
    double rhs = x.dot(C.adjoint_apply(u));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + x.norm() * u.norm()));
  }
}

TEST_CASE("adjoint of adjoint round-trips") {
  std::mt19937_64 rng(13);
  LinearMap C(random_matrix(rng, 4, 3));
  CHECK(C.adjoint().adjoint().matrix() == C.matrix());
}

TEST_CASE("gram_apply") {
  LinearMap C = repro::demo_matrix();
  Vector e1 = Vector::Zero(5);
  e1(0) = 1;
  Vector g = C.gram_apply(e1);
  Vector expected(5);
  expected << 123, 105, 84, 65, 137;
  CHECK(g.isApprox(expected, 1e-14));

  CHECK(LinearMap::zero(3, 2).gram_apply(Vector::Ones(3)).isZero());

  std::mt19937_64 rng(17);
  LinearMap R(random_matrix(rng, 4, 6));
  Vector v = random_vector(rng, 4);
  Vector direct = (R.matrix() * R.matrix().transpose()) * v;
  CHECK(R.gram_apply(v).isApprox(direct, 1e-13));
}

TEST_CASE("construction rejects non-finite entries") {
  Matrix bad = Matrix::Ones(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(LinearMap{bad}, std::invalid_argument);
}

TEST_CASE("estimate_spectrum") {
  SUBCASE("demo matrix norm") {
    GramSpectrum s = estimate_spectrum(repro::demo_matrix());
    CHECK(std::abs(s.op_norm - 532.64) < 0.01);
    CHECK(s.norm_C * s.norm_C == doctest::Approx(s.op_norm).epsilon(1e-12));
  }
  SUBCASE("identity") {
    GramSpectrum s = estimate_spectrum(LinearMap::identity(4));
    CHECK(s.op_norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.min_eigen == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("diagonal squares") {
    Matrix D = Matrix::Zero(3, 3);
    D(0, 0) = 1; D(1, 1) = 2; D(2, 2) = 3;
    GramSpectrum s = estimate_spectrum(LinearMap(D));
    CHECK(s.op_norm == doctest::Approx(9.0).epsilon(1e-9));
    CHECK(s.min_eigen == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("zero operator rejected") {
    CHECK_THROWS_AS(estimate_spectrum(LinearMap::zero(2, 2)), std::invalid_argument);
  }
  SUBCASE("0 <= min_eigen <= op_norm") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
      GramSpectrum s = estimate_spectrum(LinearMap(random_matrix(rng, 3, 5)));
      CHECK(s.min_eigen >= 0.0);
      CHECK(s.min_eigen <= s.op_norm);
    }
  }
}

TEST_CASE("estimate_spectrum matches dense eigen-decomposition oracle") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 15; ++t) {
    // rectangular with margin: keeps the Gram spectrum's lower edge away
    // from near-degenerate spacing where plain power iteration stalls
    int m = 2 + static_cast<int>(rng() % 44);  // up to 50 with the margin
    int n = m + 4 + static_cast<int>(rng() % 3);
    if (t % 2) std::swap(m, n);
    Matrix Cm = random_matrix(rng, m, n);
    GramSpectrum s = estimate_spectrum(LinearMap(Cm));
    auto [hi, lo] = gram_extremes_exact(Cm);
    CHECK(std::abs(s.op_norm - hi) <= 1e-8 * hi);
    CHECK(std::abs(s.min_eigen - std::max(lo, 0.0)) <= 1e-8 * hi);
  }
}

TEST_CASE("nonexpansive_bound_holds") {
  LinearMap C = repro::demo_matrix();
  GramSpectrum s = estimate_spectrum(C);

  auto at_zero = nonexpansive_bound_holds(C, 0.0, s);
  CHECK(at_zero.holds);
  CHECK(at_zero.certificate == doctest::Approx(1.0));

  auto violating = nonexpansive_bound_holds(C, 1e-2, s);
  CHECK_FALSE(violating.holds);
  CHECK(std::abs(violating.certificate - 4.33) < 0.01);

  auto boundary = nonexpansive_bound_holds(C, 2.0 / s.op_norm, s);
  CHECK(boundary.holds);
  CHECK(boundary.certificate <= 1.0 + 1e-12);

  CHECK_THROWS_AS(nonexpansive_bound_holds(C, -0.1, s), std::invalid_argument);
}

TEST_CASE("forward/reverse nonexpansiveness equivalence") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    int m = 1 + static_cast<int>(rng() % 5);
    int n = 1 + static_cast<int>(rng() % 5);
    Matrix Cm = random_matrix(rng, m, n, 2.0);
    if (Cm.isZero(1e-12)) continue;
    auto [hi, lo] = gram_extremes_exact(Cm);
    double bound = 2.0 / hi;
    for (int g = 0; g < 10; ++g) {
      double gamma = bound * unit(rng);
      CHECK(shifted_norm_exact(Cm, gamma) <= 1.0 + 1e-10);
    }
    for (double delta : {0.01, 0.1, 1.0}) {
      CHECK(shifted_norm_exact(Cm, bound * (1.0 + delta)) > 1.0);
    }
  }
}
