#include <cmath>

#include "amgate/constraints.hpp"
#include "amgate/errors.hpp"
#include "amgate/optimizer.hpp"
#include "amgate/oracles.hpp"
#include "doctest.h"

using namespace amgate;

namespace {

const PhysicalParams kParams(0.1, 1.0);

}  // namespace

TEST_CASE("quadratic forms") {
  const auto f2 = build_forms(2);
  CHECK(f2.power_diag == std::vector<double>{0.25, 0.5});
  CHECK(f2.phase_diag[0] == -0.25);
  CHECK(f2.phase_diag[1] == doctest::Approx(1.0 / 6.0));
  const auto f3 = build_forms(3);
  CHECK(f3.phase_diag[2] == doctest::Approx(1.0 / 16.0));
  CHECK_THROWS_AS(build_forms(1), PreconditionError);
}

TEST_CASE("single-variable reduction for N=2, l=1") {
  Matrix z(2, 1);
  z(0, 0) = -2.0 / std::sqrt(5.0);
  z(1, 0) = 1.0 / std::sqrt(5.0);
  const auto rp = reduce(build_forms(2), z);
  CHECK(rp.power(0, 0) == doctest::Approx(3.0 / 10.0).epsilon(1e-14));
  CHECK(rp.phase(0, 0) == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
  CHECK(std::abs(rp.phase(0, 0) / rp.power(0, 0)) == doctest::Approx(5.0 / 9.0).epsilon(1e-14));

  const auto sol = solve_rayleigh(rp);
  CHECK(sol.eigenvalue == doctest::Approx(-5.0 / 9.0).epsilon(1e-14));
  REQUIRE(sol.coefficients.size() == 2);
  CHECK(sol.coefficients[0] > 0.0);
  CHECK(sol.coefficients[1] / sol.coefficients[0] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("identity basis leaves the forms unchanged") {
  const auto forms = build_forms(4);
  const auto rp = reduce(forms, Matrix::identity(4));
  CHECK(max_abs(rp.power - forms.power()) == 0.0);
  CHECK(max_abs(rp.phase - forms.phase()) == 0.0);
}

TEST_CASE("hand-eliminated one-constraint matrices") {
  const auto e3 = explicit_reduced_1lc(3);
  CHECK(e3.power(0, 0) == doctest::Approx(1.5));
  CHECK(e3.power(0, 1) == doctest::Approx(1.0));
  CHECK(e3.power(1, 1) == doctest::Approx(1.5));
  CHECK(e3.phase(0, 0) == doctest::Approx(-1.0 + 1.0 / 6.0));
  CHECK(e3.phase(0, 1) == doctest::Approx(-1.0));
  CHECK(e3.phase(1, 1) == doctest::Approx(-1.0 + 1.0 / 16.0));

  const auto e2 = explicit_reduced_1lc(2);
  CHECK(e2.power(0, 0) == doctest::Approx(1.5));
  CHECK(e2.phase(0, 0) == doctest::Approx(-5.0 / 6.0));
  CHECK(solve_rayleigh(e2).eigenvalue == doctest::Approx(-5.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("hand-eliminated two-constraint scalars for N=3") {
  const auto e = explicit_reduced_2lc(3);
  REQUIRE(e.power.rows() == 1);
  CHECK(e.power(0, 0) == doctest::Approx(147.0 / 32.0).epsilon(1e-14));
  CHECK(e.phase(0, 0) == doctest::Approx(-21.0 / 32.0).epsilon(1e-14));
  CHECK(solve_rayleigh(e).eigenvalue == doctest::Approx(-1.0 / 7.0).epsilon(1e-14));

  const auto qr = reduce(build_forms(3), nullspace_basis(build_constraint_matrix(2, 3)), 2);
  CHECK(solve_rayleigh(qr).eigenvalue == doctest::Approx(-1.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("pencil spectrum does not depend on the basis (l=1, N=10)") {
  const auto qr = solve_rayleigh(reduce(build_forms(10), nullspace_basis(build_constraint_matrix(1, 10)), 1));
  const auto ex = solve_rayleigh(explicit_reduced_1lc(10));
  CHECK(std::abs(qr.eigenvalue - ex.eigenvalue) < 1e-12);
  CHECK(std::abs(qr.opposite_extreme - ex.opposite_extreme) < 1e-12);
}

TEST_CASE("eigen solution matches brute-force search for N=6, l=1") {
  const auto opt = optimize_pulse(6, 1, kParams);
  const auto bf = oracle::brute_force_ratio(6, 1, 1);
  CHECK(std::abs(opt.ratio - bf.ratio) < 1e-8);
}

TEST_CASE("optimize_pulse") {
  const auto o2 = optimize_pulse(2, 1, kParams);
  CHECK(o2.ratio == doctest::Approx(5.0 / 9.0).epsilon(1e-13));
  CHECK(o2.power_overhead == doctest::Approx(9.0 / 5.0).epsilon(1e-13));
  CHECK(o2.overhead_percent() == doctest::Approx(80.0).epsilon(1e-12));
  CHECK(o2.pulse.a(1) == 0.0);
  CHECK(!o2.pulse.has_sine_terms());

  const auto o100 = optimize_pulse(100, 1, kParams);
  CHECK(std::abs(o100.power_overhead - 1.0051) < 5e-4);
  const auto o100b = optimize_pulse(100, 2, kParams);
  CHECK(std::abs(o100b.power_overhead - 1.012) < 1e-3);
  CHECK(o100b.constraint_residual < 1e-14 * 100 * 100);
  CHECK(o100b.phase_residual < 1e-10);

  CHECK_THROWS_WITH_AS(optimize_pulse(2, 2, kParams), doctest::Contains("over-constrained"), PreconditionError);
}

TEST_CASE("optimization result JSON") {
  const auto j = optimal_pulse_to_json(optimize_pulse(4, 1, kParams));
  for (const char* key : {"N", "l", "eigenvalue", "ratio", "power_overhead_percent", "pulse", "residuals"})
    CHECK(j.contains(key));
  CHECK(pulse_from_json(j.at("pulse")).order() == 4);
}

TEST_CASE("coefficients to pulse") {
  const double c[] = {1.0, 2.0, 3.0};
  const auto p = pulse_from_coefficients(c);
  CHECK(p.order() == 3);
  CHECK(p.a0() == 1.0);
  CHECK(p.a(1) == 0.0);
  CHECK(p.a(2) == 2.0);
  CHECK(p.a(3) == 3.0);
}
