#include "amgate/gate_sim.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iterator>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "amgate/errors.hpp"
#include "amgate/optimizer.hpp"
#include "amgate/parallel.hpp"
#include "amgate/trajectory.hpp"

namespace amgate {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

double fidelity_analytic(double F, double G, double A, double nbar) {
  const double s = (nbar + 0.5) * (F * F + G * G) / 2.0;
  return (3.0 + std::exp(-4.0 * s)) / 8.0 + std::exp(-s) * std::sin(A + F * G / 2.0) / 2.0;
}

double infidelity_analytic(double F, double G, double phase_deviation, double nbar) {
  const double s = (nbar + 0.5) * (F * F + G * G) / 2.0;
  const double half = std::sin(0.5 * (phase_deviation + F * G / 2.0));
  // 1 - F = (1 - e^{-4s})/8 + [(1 - e^{-s}) + e^{-s} (1 - cos u)]/2, u = deviation + FG/2
  return -std::expm1(-4.0 * s) / 8.0 + 0.5 * (-std::expm1(-s) + std::exp(-s) * 2.0 * half * half);
}

double infidelity_leading_order(double F, double G, double nbar) { return (nbar + 0.5) * (F * F + G * G) / 2.0; }

GateOutcome reduced_spin_state(double F, double G, double A, const MotionalState& motional, int cutoff) {
  const auto weights = motional.weights(1e-10);
  const int highest = static_cast<int>(weights.size()) - 1;
  if (highest > cutoff) {
    std::ostringstream msg;
    msg << "insufficient Fock cutoff " << cutoff << ": motional state needs levels up to " << highest
        << " to hold mass 1 - 1e-10";
    throw PreconditionError(msg.str());
  }

  const FockPropagator u(F, G, A, cutoff);
  const std::size_t n = u.levels();
  const std::size_t edge_start = static_cast<std::size_t>(std::ceil(0.9 * cutoff));

  GateOutcome out;
  out.F = F;
  out.G = G;
  out.A = A;
  out.cutoff = cutoff;
  std::vector<cplx> psi0(u.dimension(), 0.0);
  for (int k = 0; k <= highest; ++k) {
    const double w = weights[k];
    if (w == 0.0) continue;
    psi0[k] = 1.0;  // |gg> (x) |k>
    const auto psi = u.apply(psi0);
    psi0[k] = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        cplx s = 0.0;
        for (std::size_t m = 0; m < n; ++m) s += psi[a * n + m] * std::conj(psi[b * n + m]);
        out.rho[4 * a + b] += w * s;
      }
    for (int a = 0; a < 4; ++a)
      for (std::size_t m = edge_start; m < n; ++m) out.edge_population += w * std::norm(psi[a * n + m]);
  }

  const auto ideal = ideal_state();
  cplx fid = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) fid += std::conj(ideal[a]) * out.rho[4 * a + b] * ideal[b];
  out.fidelity = fid.real();
  return out;
}

GateOutcome reduced_spin_state(double F, double G, double A, const MotionalState& motional,
                               const CutoffPolicy& policy) {
  if (policy.forced > 0) return reduced_spin_state(F, G, A, motional, policy.forced);

  const int highest = static_cast<int>(motional.weights(1e-10).size()) - 1;
  int cutoff = std::max(40 + static_cast<int>(std::ceil(10.0 * motional.mean_phonons())), highest + 10);
  if (cutoff > policy.max_cutoff)
    throw NumericalError("motional state needs a Fock cutoff above " + std::to_string(policy.max_cutoff));
  GateOutcome prev = reduced_spin_state(F, G, A, motional, cutoff);
  while (cutoff < policy.max_cutoff) {
    cutoff = std::min(2 * cutoff, policy.max_cutoff);
    GateOutcome next = reduced_spin_state(F, G, A, motional, cutoff);
    if (std::abs(next.fidelity - prev.fidelity) < policy.tol) return next;
    prev = std::move(next);
  }
  std::ostringstream msg;
  msg << "Fock cutoff did not converge up to " << policy.max_cutoff << " (F=" << F << ", G=" << G << ")";
  throw NumericalError(msg.str());
}

double gate_orientation(const FourierPulse& pulse) { return normalized_phase(pulse) > 0.0 ? 1.0 : -1.0; }

std::vector<PopulationPoint> populations_vs_time(const FourierPulse& pulse, const PhysicalParams& params,
                                                 const MotionalState& motional, std::span<const double> t_grid,
                                                 const CutoffPolicy& policy, int threads) {
  const double T = params.gate_time();
  for (double t : t_grid)
    if (t < 0.0 || t > 1.2 * T * (1.0 + 1e-12))
      throw PreconditionError("population grid must lie within [0, 1.2 T]");
  const double orientation = gate_orientation(pulse);
  const auto traj = sample_trajectory(pulse, params, t_grid);

  std::vector<PopulationPoint> out(traj.size());
  parallel_for(traj.size(), threads, [&](std::size_t k) {
    const auto& p = traj[k];
    const auto state = reduced_spin_state(p.F, orientation * p.G, orientation * p.A, motional, policy);
    out[k] = {p.t, state.p_gg(), state.p_ee()};
  });
  return out;
}

double population_steepness(std::span<const PopulationPoint> points, double gate_time, double window) {
  double steepest = 0.0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    const double mid = 0.5 * (points[k].t + points[k - 1].t);
    if (std::abs(mid - gate_time) >= window * gate_time) continue;
    const double dt = (points[k].t - points[k - 1].t) / gate_time;
    if (dt <= 0.0) continue;
    steepest = std::max(steepest, std::abs(points[k].p_gg - points[k - 1].p_gg) / dt);
  }
  return steepest;
}

std::vector<double> default_dt_grid() {
  constexpr int per_side = 81;
  std::vector<double> mags(per_side);
  const double lo = std::log(1e-4);
  const double hi = std::log(2e-1);
  for (int k = 0; k < per_side; ++k) mags[k] = std::exp(lo + (hi - lo) * k / (per_side - 1));
  mags.front() = 1e-4;
  mags.back() = 2e-1;
  std::vector<double> grid;
  for (auto it = mags.rbegin(); it != mags.rend(); ++it) grid.push_back(-*it);
  grid.push_back(0.0);
  grid.insert(grid.end(), mags.begin(), mags.end());
  return grid;
}

std::vector<ScanPoint> scan_infidelity(const FourierPulse& pulse, const PhysicalParams& params, double nbar,
                                       std::span<const double> dt_over_T, int threads) {
  pulse.require_closed();
  if (!(nbar >= 0.0)) throw PreconditionError("nbar must be non-negative");
  const double orientation = gate_orientation(pulse);
  const double phase_T = params.phase_scale() * std::abs(normalized_phase(pulse));
  const double deviation_T = phase_T - std::numbers::pi / 2.0;
  if (std::abs(deviation_T) > 1e-9)
    throw PreconditionError("pulse is not rescaled to |A(T)| = pi/2 (off by " + std::to_string(deviation_T) + ")");
  for (double d : dt_over_T)
    if (std::abs(d) > 0.2 + 1e-12) throw PreconditionError("timing errors beyond |dt| = 0.2 T are not supported");

  double coeff_sum = std::abs(pulse.a0());
  for (int n = 1; n <= pulse.order(); ++n) coeff_sum += std::abs(pulse.a(n)) + std::abs(pulse.b(n));
  const double F_scale = params.eta() / (std::numbers::sqrt2 * params.xi0()) * coeff_sum;

  const double T = params.gate_time();
  const QuadratureOptions tight{1e-18, 1e-13, 40, 20000};
  std::vector<ScanPoint> out(dt_over_T.size());
  parallel_for(dt_over_T.size(), threads, [&](std::size_t k) {
    const double dt = dt_over_T[k] * T;
    const double F = closed_form_F(pulse, params, dt);
    const double G = orientation * closed_form_G(pulse, params, dt);
    const double dA = orientation * geometric_phase(pulse, params, dt, tight);
    const double x = std::min(1.0, std::abs(params.xi0() * dt));
    const double sigma = 4.0 * kEps * F_scale * x;
    const double phase_sigma = 4.0 * kEps * (std::numbers::pi / 2.0) + 1e-13 * std::abs(dA);
    const double floor = (nbar + 0.5) * sigma * sigma + 0.25 * phase_sigma * phase_sigma;
    out[k] = {dt_over_T[k], infidelity_analytic(F, G, deviation_T + dA, nbar), floor};
  });
  return out;
}

SlopeFit fit_loglog_slope(std::span<const ScanPoint> curve, double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) throw PreconditionError("slope window must satisfy 0 < lo < hi");
  auto collect = [&](double sign) {
    std::vector<const ScanPoint*> pts;
    for (const auto& p : curve) {
      const double x = sign * p.dt_over_T;
      if (x >= lo * (1 - 1e-12) && x <= hi * (1 + 1e-12)) pts.push_back(&p);
    }
    return pts;
  };
  auto pts = collect(1.0);
  if (pts.size() < 8) pts = collect(-1.0);
  if (pts.size() < 8)
    throw PreconditionError("slope fit needs at least 8 points in the window, found " + std::to_string(pts.size()));

  std::vector<double> xs, ys;
  for (const auto* p : pts) {
    if (!std::isfinite(p->infidelity) || p->infidelity <= 0.0 ||
        p->infidelity <= 100.0 * std::max(p->noise_floor, std::numeric_limits<double>::min())) {
      std::ostringstream msg;
      msg << "window below noise floor, widen dt range (infidelity " << p->infidelity << " at dt/T = " << p->dt_over_T
          << ", floor " << p->noise_floor << ")";
      throw NumericalError(msg.str());
    }
    xs.push_back(std::log(std::abs(p->dt_over_T)));
    ys.push_back(std::log(p->infidelity));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.points = static_cast<int>(xs.size());
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (my + fit.slope * (xs[i] - mx));
    rss += r * r;
  }
  fit.std_error = xs.size() > 2 ? std::sqrt(rss / (n - 2.0) / sxx) : 0.0;
  return fit;
}

StabilityRegion stability_region(std::span<const ScanPoint> curve, double threshold) {
  if (!(threshold > 0.0)) throw PreconditionError("stability threshold must be positive");
  if (curve.empty()) throw PreconditionError("empty infidelity curve");

  std::vector<ScanPoint> sorted(curve.begin(), curve.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.dt_over_T < b.dt_over_T; });
  const auto zero = std::find_if(sorted.begin(), sorted.end(), [](const auto& p) { return p.dt_over_T >= 0.0; });
  if (zero == sorted.end() || zero->dt_over_T != 0.0)
    throw PreconditionError("stability region needs a curve containing dt = 0");
  if (zero->infidelity >= threshold) return {0.0, true};

  // Walk outward from dt = 0 on one side; returns the interpolated crossing or nothing.
  auto side = [&](auto begin, auto end) -> std::optional<double> {
    ScanPoint prev = *zero;
    for (auto it = begin; it != end; ++it) {
      if (it->infidelity >= threshold) {
        const double x0 = std::abs(prev.dt_over_T), x1 = std::abs(it->dt_over_T);
        const double f = (threshold - prev.infidelity) / (it->infidelity - prev.infidelity);
        return x0 + f * (x1 - x0);
      }
      prev = *it;
    }
    return std::nullopt;
  };
  const auto right = side(zero + 1, sorted.end());
  const auto left = side(std::make_reverse_iterator(zero), sorted.rend());

  const double grid_half = std::min(std::abs(sorted.front().dt_over_T), std::abs(sorted.back().dt_over_T));
  if (!right && !left) return {grid_half, false};
  double w = grid_half;
  if (right) w = std::min(w, *right);
  if (left) w = std::min(w, *left);
  return {w, true};
}

double calibrate_stability_threshold(const PhysicalParams& params, double target_half_width) {
  const auto opt = optimize_pulse(5, 1, params);
  const std::array<double, 1> grid = {target_half_width};
  return scan_infidelity(opt.pulse, params, 0.0, grid).front().infidelity;
}

void write_scan_csv(std::ostream& out, std::span<const ScanPoint> curve) {
  out << "dt_over_T,infidelity\n" << std::setprecision(17);
  for (const auto& p : curve) out << p.dt_over_T << ',' << p.infidelity << '\n';
}

void write_populations_csv(std::ostream& out, std::span<const PopulationPoint> points, double gate_time) {
  out << "t_over_T,p_gg,p_ee\n" << std::setprecision(17);
  for (const auto& p : points) out << p.t / gate_time << ',' << p.p_gg << ',' << p.p_ee << '\n';
}

}  // namespace amgate
