#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "amgate/errors.hpp"
#include "amgate/gate_sim.hpp"
#include "amgate/optimizer.hpp"
#include "doctest.h"

using namespace amgate;
using std::numbers::pi;

namespace {

const PhysicalParams kParams(0.1, 1.0);
const double kT = kParams.gate_time();

double fidelity_of(const std::vector<cplx>& psi, int cutoff) {
  // Ground-state motional input: project onto |ideal> (x) sum over n.
  const auto ideal = ideal_state();
  const int levels = cutoff + 1;
  double f = 0.0;
  for (int n = 0; n < levels; ++n) {
    cplx amp = 0.0;
    for (int s = 0; s < 4; ++s) amp += std::conj(ideal[s]) * psi[s * levels + n];
    f += std::norm(amp);
  }
  return f;
}

}  // namespace

TEST_CASE("analytic fidelity") {
  for (double nbar : {0.0, 0.5, 2.0}) {
    CHECK(fidelity_analytic(0, 0, pi / 2, nbar) == doctest::Approx(1.0));
    CHECK(fidelity_analytic(0, 0, 0, nbar) == doctest::Approx(0.5));
  }
  const double f = fidelity_analytic(0.1, 0.05, pi / 2, 2.0);
  const auto out = reduced_spin_state(0.1, 0.05, pi / 2, MotionalState::thermal(2.0));
  CHECK(std::abs(f - out.fidelity) < 1e-8);
}

TEST_CASE("leading-order infidelity") {
  CHECK(infidelity_leading_order(0, 0, 3.0) == 0.0);
  CHECK(infidelity_leading_order(1e-3, 0, 0) == doctest::Approx(2.5e-7));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-7e-3, 7e-3);
  for (int k = 0; k < 20; ++k) {
    const double F = u(rng), G = u(rng);
    const double exact = 1.0 - fidelity_analytic(F, G, pi / 2, 0.0);
    CHECK(std::abs(infidelity_leading_order(F, G, 0.0) - exact) <= 0.05 * exact);
  }
}

TEST_CASE("stable infidelity matches the direct formula where both are accurate") {
  for (double nbar : {0.0, 1.0}) {
    const double direct = 1.0 - fidelity_analytic(0.3, -0.2, pi / 2 + 0.1, nbar);
    CHECK(infidelity_analytic(0.3, -0.2, 0.1, nbar) == doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK(infidelity_analytic(1e-9, 0, 0, 0) == doctest::Approx(2.5e-19).epsilon(1e-6));
}

TEST_CASE("Fock propagator limits") {
  const int cutoff = 20;
  const int levels = cutoff + 1;
  std::vector<cplx> gg(4 * levels, 0.0);
  gg[0] = 1.0;

  // Equal to the ideal state up to a global phase.
  const auto ideal = propagator_fock(0, 0, pi / 2, cutoff).apply(gg);
  const auto target = ideal_state();
  cplx overlap = 0.0;
  for (int s = 0; s < 4; ++s) overlap += std::conj(target[s]) * ideal[s * levels];
  CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-14);
  for (int s = 0; s < 4; ++s) CHECK(std::abs(ideal[s * levels] - overlap * target[s]) < 1e-14);

  const auto id = propagator_fock(0, 0, 0, cutoff).matrix();
  const std::size_t dim = 4 * levels;
  double worst = 0.0;
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) worst = std::max(worst, std::abs(id[c * dim + r] - (r == c ? 1.0 : 0.0)));
  CHECK(worst < 1e-13);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::vector<cplx> gg40(4 * 41, 0.0);
  gg40[0] = 1.0;
  for (int k = 0; k < 10; ++k) {
    const double F = u(rng), G = u(rng), A = pi / 2 + u(rng);
    const double f = fidelity_of(propagator_fock(F, G, A, 40).apply(gg40), 40);
    CHECK(std::abs(f - fidelity_analytic(F, G, A, 0.0)) < 1e-8);
  }
  CHECK(propagator_fock(0.4, -0.3, 1.0, 60).unitarity_deviation() < 1e-12);
}

TEST_CASE("reduced spin state") {
  const auto ground = reduced_spin_state(0, 0, pi / 2, MotionalState::ground());
  CHECK(ground.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  double purity = 0.0;
  for (const auto& x : ground.rho) purity += std::norm(x);
  CHECK(purity == doctest::Approx(1.0).epsilon(1e-12));

  const auto thermal = reduced_spin_state(0, 0, pi / 2, MotionalState::thermal(2.0));
  CHECK(thermal.fidelity == doctest::Approx(1.0).epsilon(1e-12));

  const auto off = reduced_spin_state(0.2, 0.1, 1.5, MotionalState::thermal(2.0));
  CHECK(std::abs(off.fidelity - fidelity_analytic(0.2, 0.1, 1.5, 2.0)) < 1e-8);
}

TEST_CASE("starved cutoff is rejected") {
  CHECK_THROWS_WITH_AS(reduced_spin_state(0.5, 0.2, 1.0, MotionalState::thermal(0.5), 10),
                       doctest::Contains("cutoff"), PreconditionError);
  CutoffPolicy tiny;
  tiny.max_cutoff = 20;
  CHECK_THROWS_AS(reduced_spin_state(3.0, 2.0, 1.0, MotionalState::thermal(5.0), tiny), NumericalError);
  CHECK_THROWS_AS(MotionalState::thermal(-1.0), PreconditionError);
}

TEST_CASE("populations over time") {
  const auto ms = rescale_to_target_phase(FourierPulse::ms_baseline(), kParams);
  const auto am = optimize_pulse(5, 1, kParams).pulse;
  const double grid[] = {0.0, 0.5 * kT, kT};
  for (const auto& pulse : {ms, am}) {
    const auto pts = populations_vs_time(pulse, kParams, MotionalState::ground(), grid);
    CHECK(pts[0].p_gg == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(pts[0].p_ee) < 1e-12);
    CHECK(pts[2].p_gg == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(pts[2].p_ee == doctest::Approx(0.5).epsilon(1e-10));
  }

  std::vector<double> near;
  for (int k = -20; k <= 20; ++k) near.push_back(kT * (1.0 + 0.0025 * k));
  const auto thermal = MotionalState::thermal(2.0);
  const double s_ms = population_steepness(populations_vs_time(ms, kParams, thermal, near), kT);
  const double s_am = population_steepness(populations_vs_time(am, kParams, thermal, near), kT);
  CHECK(s_ms > s_am);

  std::ostringstream csv;
  write_populations_csv(csv, populations_vs_time(ms, kParams, MotionalState::ground(), grid), kT);
  CHECK(csv.str().rfind("t_over_T,p_gg,p_ee\n", 0) == 0);
}

TEST_CASE("gate orientation") {
  CHECK(gate_orientation(FourierPulse::ms_baseline()) == -1.0);
  FourierPulse a2(2);
  a2.set_a(2, 1.0);
  CHECK(gate_orientation(a2) == 1.0);
}

TEST_CASE("timing-error scans") {
  const auto grid = default_dt_grid();
  CHECK(grid.size() == 163);
  CHECK(grid.front() == doctest::Approx(-0.2));
  CHECK(grid.back() == doctest::Approx(0.2));
  CHECK(grid[81] == 0.0);

  const auto ms = rescale_to_target_phase(FourierPulse::ms_baseline(), kParams);
  const auto ms_curve = scan_infidelity(ms, kParams, 0.0, grid);
  CHECK(ms_curve[81].infidelity < 1e-12);
  CHECK(std::abs(fit_loglog_slope(ms_curve, 1e-3, 1e-2).slope - 2.0) < 0.05);

  const auto one = scan_infidelity(optimize_pulse(10, 1, kParams).pulse, kParams, 0.0, grid);
  CHECK(one[81].infidelity < 1e-12);
  CHECK(std::abs(fit_loglog_slope(one, 1e-3, 1e-2).slope - 6.0) < 0.2);

  const auto two = scan_infidelity(optimize_pulse(10, 2, kParams).pulse, kParams, 0.0, grid);
  CHECK(std::abs(fit_loglog_slope(two, 1e-3, 1e-2).slope - 10.0) < 0.3);

  const auto w_ms = stability_region(ms_curve, kDefaultStabilityThreshold);
  const auto w_one = stability_region(one, kDefaultStabilityThreshold);
  CHECK(w_ms.crossed);
  CHECK(w_ms.half_width < 0.01);
  CHECK(w_one.half_width > w_ms.half_width);

  const auto open = FourierPulse(1.0, {0.5}, {0.0});
  CHECK_THROWS_AS(scan_infidelity(open, kParams, 0.0, grid), PreconditionError);
  const double too_wide[] = {0.5};
  CHECK_THROWS_AS(scan_infidelity(ms, kParams, 0.0, too_wide), PreconditionError);
}

TEST_CASE("slope fit on synthetic data") {
  std::vector<ScanPoint> curve;
  for (int k = 0; k <= 40; ++k) {
    const double x = std::pow(10.0, -3.0 + k / 40.0);
    curve.push_back({x, 3.0 * std::pow(x, 4), 0.0});
  }
  const auto fit = fit_loglog_slope(curve, 1e-3, 1e-2);
  CHECK(std::abs(fit.slope - 4.0) < 1e-6);
  CHECK(fit.points == 41);
  CHECK_THROWS_AS(fit_loglog_slope(curve, 1e-2, 1e-3), PreconditionError);
}

TEST_CASE("slope fit refuses data at the noise floor") {
  std::vector<ScanPoint> curve;
  for (int k = 0; k <= 20; ++k) {
    const double x = std::pow(10.0, -3.0 + k / 20.0);
    curve.push_back({x, 1e-30, 1e-31});
  }
  CHECK_THROWS_WITH_AS(fit_loglog_slope(curve, 1e-3, 1e-2), doctest::Contains("noise floor"), NumericalError);
}

TEST_CASE("stability threshold calibration reproduces the stored default") {
  const double tau = calibrate_stability_threshold(kParams);
  CHECK(tau == doctest::Approx(kDefaultStabilityThreshold).epsilon(1e-10));
  const auto curve = scan_infidelity(optimize_pulse(5, 1, kParams).pulse, kParams, 0.0, default_dt_grid());
  CHECK(stability_region(curve, tau).half_width == doctest::Approx(0.04).epsilon(5e-3));
}

TEST_CASE("stability region without a crossing reports the grid edge") {
  std::vector<ScanPoint> flat;
  for (double x : {-0.1, 0.0, 0.1}) flat.push_back({x, 1e-20, 0.0});
  const auto r = stability_region(flat, 1e-4);
  CHECK(!r.crossed);
  CHECK(r.half_width == doctest::Approx(0.1));
}
