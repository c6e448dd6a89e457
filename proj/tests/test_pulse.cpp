#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "amgate/errors.hpp"
#include "amgate/pulse.hpp"
#include "amgate/trajectory.hpp"
#include "doctest.h"

using namespace amgate;
using std::numbers::pi;

namespace {

const PhysicalParams kParams(0.1, 1.0);

FourierPulse mixed() {
  FourierPulse p(3);
  p.set_a0(2.0);
  p.set_a(2, 1.0);
  p.set_b(3, 1.0);
  return p;
}

FourierPulse only_a2() {
  FourierPulse p(2);
  p.set_a(2, 1.0);
  return p;
}

}  // namespace

TEST_CASE("physical parameters") {
  CHECK(kParams.gate_time() == doctest::Approx(2 * pi));
  CHECK(kParams.phase_scale() == doctest::Approx(2 * pi * 0.01));
  CHECK_THROWS_AS(PhysicalParams(0.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(PhysicalParams(0.1, -1.0), PreconditionError);
  CHECK_THROWS_AS(PhysicalParams(std::nan(""), 1.0), PreconditionError);
}

TEST_CASE("envelope evaluation") {
  const auto ms = FourierPulse::ms_baseline();
  for (double t : {0.0, 0.3, 1.7, 5.0}) CHECK(eval_envelope(ms, kParams, t) == doctest::Approx(1.0));
  CHECK(eval_envelope(only_a2(), kParams, 0.0) == doctest::Approx(1.0));
  CHECK(eval_envelope(mixed(), kParams, kParams.gate_time()) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("envelope derivatives at T") {
  const auto ms = FourierPulse::ms_baseline();
  CHECK(envelope_derivative_at_T(ms, kParams, 0) == doctest::Approx(1.0));
  CHECK(envelope_derivative_at_T(ms, kParams, 1) == 0.0);
  CHECK(envelope_derivative_at_T(only_a2(), kParams, 2) == doctest::Approx(-4.0));
  const PhysicalParams fast(0.1, 3.0);
  CHECK(envelope_derivative_at_T(only_a2(), fast, 2) == doctest::Approx(-36.0));
  CHECK_THROWS_AS(envelope_derivative_at_T(ms, kParams, -1), PreconditionError);
}

TEST_CASE("normalized power and phase") {
  CHECK(normalized_power(FourierPulse::ms_baseline()) == doctest::Approx(1.0));
  CHECK(normalized_power(only_a2()) == doctest::Approx(0.5));
  CHECK(normalized_power(mixed()) == doctest::Approx(2.0));

  CHECK(normalized_phase(FourierPulse::ms_baseline()) == doctest::Approx(-1.0));
  CHECK(normalized_phase(only_a2()) == doctest::Approx(1.0 / 6.0));
  FourierPulse b2(2);
  b2.set_b(2, 1.0);
  CHECK(normalized_phase(b2) == doctest::Approx(1.0 / 6.0));

  FourierPulse open(2);
  open.set_a(1, 0.3);
  CHECK_THROWS_AS(normalized_phase(open), PreconditionError);
  CHECK_THROWS_WITH_AS(open.require_closed(), doctest::Contains("a1"), PreconditionError);
}

TEST_CASE("rescale to the target phase") {
  // T eta^2 / xi0 = pi/4
  const PhysicalParams quarter(1.0 / std::sqrt(8.0), 1.0);
  REQUIRE(quarter.phase_scale() == doctest::Approx(pi / 4));
  const auto ms = FourierPulse::ms_baseline();
  CHECK(target_phase_scale(ms, quarter) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const auto scaled = rescale_to_target_phase(ms, quarter);
  CHECK(scaled.a0() == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(geometric_phase(scaled, quarter, quarter.gate_time()) == doctest::Approx(-pi / 2).epsilon(1e-12));

  CHECK(target_phase_scale(scaled, quarter) == doctest::Approx(1.0).epsilon(1e-14));

  // T eta^2 / xi0 = 3: s^2 * 3 * (1/6) = pi/2, so s = sqrt(pi).
  const PhysicalParams three(std::sqrt(3.0 / (2 * pi)), 1.0);
  REQUIRE(three.phase_scale() == doctest::Approx(3.0));
  CHECK(target_phase_scale(only_a2(), three) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  const auto a2 = rescale_to_target_phase(only_a2(), three);
  CHECK(geometric_phase(a2, three, three.gate_time()) == doctest::Approx(pi / 2).epsilon(1e-12));

  CHECK_THROWS_AS(target_phase_scale(FourierPulse(3), kParams), PreconditionError);
}

TEST_CASE("pulse accessors and validation") {
  FourierPulse p(3);
  CHECK(p.order() == 3);
  CHECK(p.a(2) == 0.0);
  CHECK_THROWS_AS(p.set_a(4, 1.0), PreconditionError);
  CHECK(p.b(0) == 0.0);
  CHECK(p.a(7) == 0.0);
  CHECK_THROWS_AS(FourierPulse(0), PreconditionError);
  CHECK_THROWS_AS(FourierPulse(1.0, {1.0, 2.0}, {0.0}), PreconditionError);
  CHECK(!p.has_sine_terms());
  p.set_b(2, 0.5);
  CHECK(p.has_sine_terms());
  CHECK(p.scaled(2.0).b(2) == 1.0);
}

TEST_CASE("pulse JSON round trip") {
  const auto p = mixed();
  const auto j = pulse_to_json(p);
  CHECK(j.at("N") == 3);
  CHECK(j.at("a").size() == 3);
  CHECK(pulse_from_json(j) == p);

  const auto dir = std::filesystem::temp_directory_path() / "amgate_test_pulse";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "p.json").string();
  save_pulse(p, path);
  CHECK(load_pulse(path) == p);

  {
    std::ofstream f(dir / "bad.json");
    f << "{\"N\": 2, \"a0\": 1.0, \"a\": [1.0], \"b\": [0.0, 0.0]}";
  }
  CHECK_THROWS_AS(load_pulse((dir / "bad.json").string()), PreconditionError);
  {
    std::ofstream f(dir / "garbage.json");
    f << "not json";
  }
  CHECK_THROWS_AS(load_pulse((dir / "garbage.json").string()), PreconditionError);
  CHECK_THROWS_AS(load_pulse((dir / "missing.json").string()), PreconditionError);
}
