#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "amgate/optimizer.hpp"
#include "amgate/oracles.hpp"
#include "amgate/trajectory.hpp"
#include "doctest.h"

using namespace amgate;
using std::numbers::pi;

namespace {

const PhysicalParams kParams(0.1, 1.0);
const double kT = kParams.gate_time();
const double kEta = 0.1;

}  // namespace

TEST_CASE("closed-form F and G of the constant pulse") {
  const auto ms = FourierPulse::ms_baseline();
  CHECK(std::abs(closed_form_F(ms, kParams, kT)) < 1e-15);
  CHECK(std::abs(closed_form_G(ms, kParams, kT)) < 1e-15);
  for (double t : {0.1, 1.3, 2.9, 4.4}) {
    CHECK(closed_form_F(ms, kParams, t) == doctest::Approx(-std::sqrt(2.0) * kEta * std::sin(t)).epsilon(1e-13));
    CHECK(closed_form_G(ms, kParams, t) ==
          doctest::Approx(-std::sqrt(2.0) * kEta * (1 - std::cos(t))).epsilon(1e-13));
  }
}

TEST_CASE("secular b1 term leaves G open at T") {
  FourierPulse p(1);
  p.set_b(1, 1.0);
  const double expected = -(kEta / std::sqrt(2.0)) * kT;
  CHECK(closed_form_G(p, kParams, kT) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(oracle::quadrature_G(p, kParams, kT) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("closed forms match quadrature for random N=6 pulses") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 10; ++k) {
    const auto p = oracle::random_pulse(6, rng, false);
    CHECK(std::abs(closed_form_F(p, kParams, 0.37 * kT) - oracle::quadrature_F(p, kParams, 0.37 * kT)) < 1e-10);
    CHECK(std::abs(closed_form_G(p, kParams, 0.81 * kT) - oracle::quadrature_G(p, kParams, 0.81 * kT)) < 1e-10);
  }
}

TEST_CASE("geometric phase") {
  FourierPulse zero(4);
  CHECK(geometric_phase(zero, kParams, 0.7 * kT) == 0.0);
  const auto ms = rescale_to_target_phase(FourierPulse::ms_baseline(), kParams);
  CHECK(geometric_phase(ms, kParams, kT) == doctest::Approx(-pi / 2).epsilon(1e-12));

  std::mt19937_64 rng(11);
  for (int k = 0; k < 5; ++k) {
    const auto p = oracle::random_pulse(5, rng);
    const double expected = kParams.phase_scale() * normalized_phase(p);
    CHECK(std::abs(geometric_phase(p, kParams, kT) - expected) < 1e-10);
  }
}

TEST_CASE("F and G derivatives at T") {
  const auto ms = FourierPulse::ms_baseline();
  CHECK(derivative_F_at_T(ms, kParams, 1) == doctest::Approx(-std::sqrt(2.0) * kEta));
  FourierPulse b2(2);
  b2.set_b(2, 1.0);
  CHECK(derivative_F_at_T(b2, kParams, 2) == doctest::Approx(-std::sqrt(2.0) * kEta * 2.0));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 5; ++k) CHECK(derivative_G_at_T(oracle::random_pulse(4, rng, false), kParams, 1) == 0.0);

  FourierPulse g2(2);
  g2.set_a0(2.0);
  g2.set_a(2, -1.0);
  CHECK(std::abs(derivative_G_at_T(g2, kParams, 2)) < 1e-15);

  CHECK_THROWS_AS(derivative_F_at_T(ms, kParams, 0), PreconditionError);
}

TEST_CASE("derivatives agree with finite differences for random N=8 pulses") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 5; ++k) {
    const auto p = oracle::random_pulse(8, rng);
    const double f3 = derivative_F_at_T(p, kParams, 3);
    CHECK(std::abs(f3 - oracle::fd_derivative_F(p, kParams, 3)) <= 1e-4 * std::abs(f3));
    const double g4 = derivative_G_at_T(p, kParams, 4);
    CHECK(std::abs(g4 - oracle::fd_derivative_G(p, kParams, 4)) <= 1e-4 * std::abs(g4));
  }
}

TEST_CASE("constant-pulse trajectory is a circle") {
  const auto ms = FourierPulse::ms_baseline();
  std::vector<double> grid;
  for (int k = 0; k <= 200; ++k) grid.push_back(kT * k / 200);
  const auto pts = sample_trajectory(ms, kParams, grid);
  const double r = std::sqrt(2.0) * kEta;
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, std::abs(std::hypot(p.G + r, -p.F) - r));
  CHECK(worst < 1e-12);
}

TEST_CASE("zero pulse stays at the origin") {
  const double grid[] = {0.0, 1.0, 2.0, 3.0};
  for (const auto& p : sample_trajectory(FourierPulse(3), kParams, grid)) {
    CHECK(p.F == 0.0);
    CHECK(p.G == 0.0);
    CHECK(p.A == 0.0);
  }
}

TEST_CASE("optimal 1 LC N=5 trajectory closes") {
  const auto opt = optimize_pulse(5, 1, kParams);
  const double grid[] = {0.0, 0.5 * kT, kT};
  const auto pts = sample_trajectory(opt.pulse, kParams, grid);
  CHECK(std::abs(pts.back().F) < 1e-10);
  CHECK(std::abs(pts.back().G) < 1e-10);
  CHECK(std::abs(std::abs(pts.back().A) - pi / 2) < 1e-10);
}

TEST_CASE("trajectory grid validation and CSV") {
  const double bad[] = {0.0, 2.0, 1.0};
  CHECK_THROWS_AS(sample_trajectory(FourierPulse::ms_baseline(), kParams, bad), PreconditionError);
  const double grid[] = {0.0, 1.0};
  std::ostringstream out;
  write_trajectory_csv(out, sample_trajectory(FourierPulse::ms_baseline(), kParams, grid));
  CHECK(out.str().rfind("t,G,negF,A\n", 0) == 0);
}
