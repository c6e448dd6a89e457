#include <cmath>
#include <random>
#include <sstream>

#include "amgate/constraints.hpp"
#include "amgate/errors.hpp"
#include "amgate/optimizer.hpp"
#include "amgate/oracles.hpp"
#include "doctest.h"

using namespace amgate;

namespace {

const PhysicalParams kParams(0.1, 1.0);

void check_row(const Matrix& m, std::size_t r, std::vector<double> expected) {
  REQUIRE(m.cols() == expected.size());
  for (std::size_t j = 0; j < expected.size(); ++j) CHECK(m(r, j) == expected[j]);
}

}  // namespace

TEST_CASE("constraint rows") {
  const auto one = build_constraint_matrix(1, 3);
  REQUIRE(one.matrix.rows() == 1);
  check_row(one.matrix, 0, {0.5, 1, 1});

  const auto two = build_constraint_matrix(2, 4);
  REQUIRE(two.matrix.rows() == 2);
  check_row(two.matrix, 0, {0.5, 1, 1, 1});
  check_row(two.matrix, 1, {0, 4, 9, 16});

  const auto with_b = build_constraint_matrix(2, 4, true);
  REQUIRE(with_b.matrix.rows() == 3);
  check_row(with_b.matrix, 2, {0, 0, 0, 0, 2, 3, 4});
  CHECK(with_b.column_names.front() == "a0");
  CHECK(with_b.column_names.back() == "b4");
}

TEST_CASE("over-constrained and invalid systems") {
  CHECK_THROWS_WITH_AS(build_constraint_matrix(2, 2), doctest::Contains("over-constrained system"),
                       PreconditionError);
  CHECK_THROWS_AS(build_constraint_matrix(0, 4), PreconditionError);
}

TEST_CASE("constraint CSV names its columns") {
  std::ostringstream out;
  write_constraint_csv(out, build_constraint_matrix(1, 3));
  CHECK(out.str() == "a0,a2,a3\n0.5,1,1\n");
}

TEST_CASE("null space for l=1, N=2") {
  const auto z = nullspace_basis(build_constraint_matrix(1, 2));
  REQUIRE(z.rows() == 2);
  REQUIRE(z.cols() == 1);
  const double s = z(0, 0) < 0 ? 1.0 : -1.0;
  CHECK(s * z(0, 0) == doctest::Approx(-2.0 / std::sqrt(5.0)));
  CHECK(s * z(1, 0) == doctest::Approx(1.0 / std::sqrt(5.0)));
}

TEST_CASE("null space for l=1, N=3 is orthonormal and annihilated") {
  const auto c = build_constraint_matrix(1, 3);
  const auto z = nullspace_basis(c);
  REQUIRE(z.cols() == 2);
  CHECK(max_abs(c.matrix * z) < 1e-14);
  CHECK(max_abs(z.transposed() * z - Matrix::identity(2)) < 1e-14);
}

TEST_CASE("null space for l=2, N=3 is spanned by (-10, 9, -4)") {
  const auto c = build_constraint_matrix(2, 3);
  const auto z = nullspace_basis(c);
  REQUIRE(z.cols() == 1);
  const double v[] = {-10.0, 9.0, -4.0};
  CHECK(std::abs(c.matrix(0, 0) * v[0] + v[1] + v[2]) == 0.0);
  CHECK(std::abs(4 * v[1] + 9 * v[2]) == 0.0);
  const double n = norm2(v);
  const double s = z(0, 0) * v[0] > 0 ? 1.0 : -1.0;
  for (int i = 0; i < 3; ++i) CHECK(s * z(i, 0) == doctest::Approx(v[i] / n).epsilon(1e-14));
}

TEST_CASE("dependent constraint rows are reported") {
  Matrix c(2, 3);
  for (int j = 0; j < 3; ++j) c(0, j) = c(1, j) = 1.0 + j;
  CHECK_THROWS_WITH_AS(nullspace_basis(c), doctest::Contains("row"), NumericalError);
}

TEST_CASE("verify_order") {
  const auto ms = FourierPulse::ms_baseline();
  const auto r1 = verify_order(ms, kParams, 1);
  CHECK(!r1.passed);
  CHECK(r1.worst.find("F^(1)") != std::string::npos);

  FourierPulse f1(2);
  f1.set_a0(2.0);
  f1.set_a(2, -1.0);
  CHECK(verify_order(f1, kParams, 2).passed);

  const auto opt = optimize_pulse(5, 2, kParams);
  const auto r4 = verify_order(opt.pulse, kParams, 4);
  CHECK(r4.passed);
  CHECK(r4.max_residual < 1e-9 * 0.1);

  FourierPulse open(2);
  open.set_a(1, 1.0);
  CHECK_THROWS_AS(verify_order(open, kParams, 1), PreconditionError);
}

TEST_CASE("redundancy of the fourth G derivative") {
  FourierPulse hand(3);
  hand.set_a0(6.0);
  hand.set_a(2, -27.0 / 5.0);
  hand.set_a(3, 12.0 / 5.0);
  const auto r = verify_redundancy(hand, kParams);
  CHECK(r.precondition_met);
  CHECK(r.passed);
  CHECK(std::abs(r.g4) < 1e-10 * 0.1);

  const auto zero = verify_redundancy(FourierPulse(3), kParams);
  CHECK(zero.passed);
  CHECK(zero.g4 == 0.0);

  std::mt19937_64 rng(9);
  const auto z = nullspace_basis(build_constraint_matrix(2, 10));
  const auto coeffs = oracle::sample_nullspace(z, rng);
  const auto r10 = verify_redundancy(pulse_from_coefficients(coeffs), kParams);
  CHECK(r10.passed);

  FourierPulse unconstrained(3);
  unconstrained.set_a0(1.0);
  const auto bad = verify_redundancy(unconstrained, kParams);
  CHECK(!bad.precondition_met);
  CHECK(!bad.passed);
}
