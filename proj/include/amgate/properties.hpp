#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amgate/gate_sim.hpp"
#include "amgate/pulse.hpp"

namespace amgate::props {

struct SuiteConfig {
  std::uint64_t seed = 1;
  int threads = 1;
  CutoffPolicy cutoff{};
  PhysicalParams params{0.1, 1.0};
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  int cases = 0;
  double worst = 0.0;      // largest observed error in the property's own metric
  double tolerance = 0.0;
  std::string detail;
};

/// Analytic fidelity against the truncated-Fock propagator over random (F, G, A, nbar),
/// together with trace, positivity and low-level unitarity of the propagator.
PropertyResult oracle_equivalence(const SuiteConfig& cfg, int count = 200);

/// Closed-form F, G against direct quadrature of f, g, including a1/b1 secular terms.
PropertyResult closed_form_vs_quadrature(const SuiteConfig& cfg, int count = 1000, int max_order = 12);

/// Leibniz derivatives at T against Richardson finite differences, orders 1..max_derivative.
PropertyResult derivative_formulas(const SuiteConfig& cfg, int count = 100, int max_derivative = 5);

/// Random members of ker C satisfy verify_order(2l) (b = 0) or verify_order(2l - 1) (with b-rows).
PropertyResult constraint_order(const SuiteConfig& cfg);

/// G^(4)(T) vanishes for random pulses satisfying the i = 1, 3 a-constraints.
PropertyResult redundancy(const SuiteConfig& cfg, int count = 100);

/// For l = 1..5 a-constraints every G^(even i <= 2l) vanishes, and with b-rows every G^(odd i < 2l).
PropertyResult redundancy_trend(const SuiteConfig& cfg);

/// A <= P/3 for b-only pulses, |A|/P <= 1 for general closed pulses, ratio 1 for the constant pulse.
PropertyResult phase_power_bound(const SuiteConfig& cfg, int count = 1000);

/// Extreme ratio independent of the null-space basis (orthonormal, rotated, elimination, explicit).
PropertyResult basis_invariance(const SuiteConfig& cfg);

/// Eigen solution against random-restart maximization, N <= 6, l <= 2.
PropertyResult brute_force_optimality(const SuiteConfig& cfg, int samples = 100000);

/// Hand-reduced values: (N=2, l=1) ratio 5/9, (N=3, l=2) ratio 1/7.
PropertyResult small_cases(const SuiteConfig& cfg);

/// Overhead monotone in N, 2 LC above 1 LC, N = 100 values.
PropertyResult power_trends(const SuiteConfig& cfg, int max_order = 100);

/// Log-log slopes 2 / 6 / 10 for MS / 1 LC / 2 LC at N = 5, 10, 20 on dt/T in [1e-3, 1e-2].
PropertyResult slope_hierarchy(const SuiteConfig& cfg);

/// Stability half-widths under the calibrated threshold: ordering and agreement with the
/// quoted +-4/3/1.5 % (1 LC) and +-7/5/3 % (2 LC) within 50 %.
PropertyResult stability_widths(const SuiteConfig& cfg);

/// Thermal (nbar = 2) P_gg is flatter near T for the 1 LC N = 5 pulse than for MS.
PropertyResult population_flatness(const SuiteConfig& cfg);

/// A supplied pulse must have a1 = b1 = 0 and a closed trajectory at T.
PropertyResult closure(const FourierPulse& pulse, const PhysicalParams& params);

/// The suites run by `amgate verify`, in order.
std::vector<PropertyResult> run_all(const SuiteConfig& cfg);

std::string format_result(const PropertyResult& r);

}  // namespace amgate::props
