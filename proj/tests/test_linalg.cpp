#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amgate/errors.hpp"
#include "amgate/linalg.hpp"
#include "amgate/parallel.hpp"
#include "amgate/quadrature.hpp"
#include "doctest.h"

using namespace amgate;

TEST_CASE("jacobi eigen of a 3x3 symmetric matrix") {
  Matrix m(3, 3);
  const double v[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v[i][j];
  const auto eig = jacobi_eigen(m);
  REQUIRE(eig.values.size() == 3);
  CHECK(eig.values[0] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(eig.values[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(eig.values[2] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));
  for (int k = 0; k < 3; ++k) {
    const auto x = eig.vectors.col(k);
    const auto mx = m * std::span<const double>(x);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(mx[i] - eig.values[k] * x[i]) < 1e-13);
  }
}

TEST_CASE("jacobi eigen of a diagonal matrix takes no rotations") {
  const double d[] = {3.0, -1.0, 0.5};
  const auto eig = jacobi_eigen(Matrix::diagonal(d));
  CHECK(eig.values[0] == -1.0);
  CHECK(eig.values[1] == 0.5);
  CHECK(eig.values[2] == 3.0);
}

TEST_CASE("householder QR reproduces the input with orthogonal Q") {
  Matrix a(4, 2);
  const double v[4][2] = {{1, 2}, {0, 1}, {3, -1}, {2, 2}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = v[i][j];
  const auto qr = householder_qr(a);
  CHECK(max_abs(qr.q * qr.r - a) < 1e-14);
  CHECK(max_abs(qr.q.transposed() * qr.q - Matrix::identity(4)) < 1e-14);
  for (int i = 1; i < 4; ++i)
    for (int j = 0; j < std::min(i, 2); ++j) CHECK(std::abs(qr.r(i, j)) < 1e-14);
}

TEST_CASE("quadratic form and vector helpers") {
  const double d[] = {1.0, 2.0};
  const double x[] = {3.0, 4.0};
  CHECK(quadratic_form(Matrix::diagonal(d), x) == doctest::Approx(41.0));
  CHECK(dot(x, x) == 25.0);
  CHECK(norm2(x) == doctest::Approx(5.0));
}

TEST_CASE("adaptive quadrature on smooth and oscillatory integrands") {
  const auto r1 = integrate([](double t) { return std::exp(t); }, 0.0, 1.0);
  CHECK(std::abs(r1.value - (std::numbers::e - 1.0)) < 1e-12);
  const auto r2 = integrate([](double t) { return std::sin(40.0 * t) * std::sin(40.0 * t); }, 0.0,
                            std::numbers::pi, QuadratureOptions{1e-13});
  CHECK(std::abs(r2.value - std::numbers::pi / 2) < 1e-12);
  const auto back = integrate([](double t) { return t * t; }, 1.0, 0.0);
  CHECK(back.value == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("quadrature reports non-convergence") {
  QuadratureOptions opts{1e-14, 0.0, 3, 5};
  CHECK_THROWS_AS(integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, opts), NumericalError);
}

TEST_CASE("parallel_for writes by index and rethrows the first failure") {
  std::vector<int> out(100, 0);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = int(i) * 2; });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == int(i) * 2);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}
