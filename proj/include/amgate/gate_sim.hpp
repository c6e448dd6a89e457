#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "amgate/fock.hpp"
#include "amgate/pulse.hpp"

namespace amgate {

/// Closed-form MS fidelity for displacement (F, G), phase A and mean phonon number nbar.
double fidelity_analytic(double F, double G, double A, double nbar);

/// 1 - fidelity_analytic(F, G, pi/2 + phase_deviation, nbar), evaluated without the
/// catastrophic cancellation of 1 - F near unit fidelity.
double infidelity_analytic(double F, double G, double phase_deviation, double nbar);

/// (nbar + 1/2)(F^2 + G^2)/2.
double infidelity_leading_order(double F, double G, double nbar);

struct GateOutcome {
  double F = 0.0;
  double G = 0.0;
  double A = 0.0;
  double fidelity = 0.0;
  std::array<cplx, 16> rho{};  // row-major 4x4 over |gg>, |ge>, |eg>, |ee>
  int cutoff = 0;
  double edge_population = 0.0;  // weight in the top tenth of the Fock levels

  cplx rho_at(int r, int c) const { return rho[4 * r + c]; }
  double p_gg() const { return rho[0].real(); }
  double p_ee() const { return rho[15].real(); }
};

/// Applies the truncated propagator to |gg> (x) motional state and traces out the oscillator.
/// Throws PreconditionError when the state does not fit below the cutoff.
GateOutcome reduced_spin_state(double F, double G, double A, const MotionalState& motional, int cutoff);

/// Cutoff doubling from max(40 + ceil(10 nbar), highest occupied level + 10) until the fidelity
/// moves by less than tol; NumericalError beyond max_cutoff.
struct CutoffPolicy {
  int max_cutoff = 640;
  double tol = 1e-10;
  int forced = 0;  // > 0: use exactly this cutoff, no refinement
};
GateOutcome reduced_spin_state(double F, double G, double A, const MotionalState& motional,
                               const CutoffPolicy& policy = {});

/// +1 when A(T) > 0, -1 otherwise. Gates with A(T) < 0 are evaluated through the mirror
/// xi0 -> -xi0, i.e. (F, G, A) -> (F, -G, -A), so that the target state is (|gg> + i|ee>)/sqrt(2).
double gate_orientation(const FourierPulse& pulse);

struct PopulationPoint {
  double t = 0.0;
  double p_gg = 0.0;
  double p_ee = 0.0;
};

std::vector<PopulationPoint> populations_vs_time(const FourierPulse& pulse, const PhysicalParams& params,
                                                 const MotionalState& motional, std::span<const double> t_grid,
                                                 const CutoffPolicy& policy = {}, int threads = 1);

/// Largest |dP_gg/d(t/T)| over |t - T| < window*T, by differences of consecutive samples.
double population_steepness(std::span<const PopulationPoint> points, double gate_time, double window = 0.05);

struct ScanPoint {
  double dt_over_T = 0.0;
  double infidelity = 0.0;
  double noise_floor = 0.0;  // estimated rounding level of the infidelity evaluation
};

/// 81 log-spaced magnitudes per sign in [1e-4, 0.2] plus 0, ascending.
std::vector<double> default_dt_grid();

/// Infidelity of a phase-rescaled closed pulse stopped at T + dt. F and G come from the closed
/// forms at dt (shift identity), the phase from A(T) + A(dt) with A(dt) by quadrature.
std::vector<ScanPoint> scan_infidelity(const FourierPulse& pulse, const PhysicalParams& params, double nbar,
                                       std::span<const double> dt_over_T, int threads = 1);

struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
  int points = 0;
};

/// Least-squares slope of log(infidelity) against log|dt/T| over lo <= dt/T <= hi
/// (the negative branch, mirrored, when the positive one is too sparse).
SlopeFit fit_loglog_slope(std::span<const ScanPoint> curve, double lo, double hi);

struct StabilityRegion {
  double half_width = 0.0;
  bool crossed = false;  // false: threshold never reached, half_width is the grid half-width
};

StabilityRegion stability_region(std::span<const ScanPoint> curve, double threshold);

/// Threshold at which the one-constraint N = 5 pulse has a 4% stability half-width:
/// the infidelity of that pulse at dt = 0.04 T (ground state).
inline constexpr double kDefaultStabilityThreshold = 1.59307018171349e-04;
double calibrate_stability_threshold(const PhysicalParams& params, double target_half_width = 0.04);

void write_scan_csv(std::ostream& out, std::span<const ScanPoint> curve);
void write_populations_csv(std::ostream& out, std::span<const PopulationPoint> points, double gate_time);

}  // namespace amgate
