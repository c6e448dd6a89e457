#include "amgate/trajectory.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "amgate/errors.hpp"

namespace amgate {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// 1 - cos(x) without cancellation near 0.
double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

double sign_power(int e) { return e % 2 == 0 ? 1.0 : -1.0; }

// sum_l C(i-1, 2l + shift) n^(i-1-shift-2l) for l = 0..lmax
double leibniz_weight(int i, int shift, int lmax, double n) {
  double sum = 0.0;
  for (int l = 0; l <= lmax; ++l) sum += binomial(i - 1, 2 * l + shift) * std::pow(n, i - 1 - shift - 2 * l);
  return sum;
}

}  // namespace

double coupling_f(const FourierPulse& pulse, const PhysicalParams& params, double t) {
  return -kSqrt2 * params.eta() * eval_envelope(pulse, params, t) * std::cos(params.xi0() * t);
}

double coupling_g(const FourierPulse& pulse, const PhysicalParams& params, double t) {
  return -kSqrt2 * params.eta() * eval_envelope(pulse, params, t) * std::sin(params.xi0() * t);
}

double closed_form_F(const FourierPulse& pulse, const PhysicalParams& params, double t) {
  const double x = params.xi0() * t;
  double sum = pulse.a0() * std::sin(x);
  sum += pulse.a(1) * (0.5 * std::sin(2.0 * x) + x);
  sum += pulse.b(1) * 0.5 * one_minus_cos(2.0 * x);
  for (int n = 2; n <= pulse.order(); ++n) {
    const double up = n + 1.0;
    const double down = n - 1.0;
    sum += pulse.a(n) * (std::sin(up * x) / up + std::sin(down * x) / down);
    sum += pulse.b(n) * (one_minus_cos(up * x) / up + one_minus_cos(down * x) / down);
  }
  return -params.eta() / (kSqrt2 * params.xi0()) * sum;
}

double closed_form_G(const FourierPulse& pulse, const PhysicalParams& params, double t) {
  const double x = params.xi0() * t;
  double sum = pulse.a0() * one_minus_cos(x);
  sum += pulse.a(1) * 0.5 * one_minus_cos(2.0 * x);
  sum += pulse.b(1) * (x - 0.5 * std::sin(2.0 * x));
  for (int n = 2; n <= pulse.order(); ++n) {
    const double up = n + 1.0;
    const double down = n - 1.0;
    sum += pulse.a(n) * (one_minus_cos(up * x) / up - one_minus_cos(down * x) / down);
    sum += pulse.b(n) * (std::sin(down * x) / down - std::sin(up * x) / up);
  }
  return -params.eta() / (kSqrt2 * params.xi0()) * sum;
}

double geometric_phase(const FourierPulse& pulse, const PhysicalParams& params, double t,
                       const QuadratureOptions& opts) {
  auto integrand = [&](double s) { return closed_form_F(pulse, params, s) * coupling_g(pulse, params, s); };
  return -integrate(integrand, 0.0, t, opts).value;
}

double derivative_F_at_T(const FourierPulse& pulse, const PhysicalParams& params, int i) {
  if (i < 1) throw PreconditionError("derivative order i must be >= 1");
  const double prefactor = kSqrt2 * params.eta() * std::pow(params.xi0(), i - 1);
  double sum = 0.0;
  if (i % 2 == 1) {
    sum = 0.5 * pulse.a0();
    for (int n = 1; n <= pulse.order(); ++n) sum += pulse.a(n) * leibniz_weight(i, 0, (i - 1) / 2, n);
    return sign_power((i + 1) / 2) * prefactor * sum;
  }
  for (int n = 1; n <= pulse.order(); ++n) sum += pulse.b(n) * leibniz_weight(i, 0, i / 2 - 1, n);
  return sign_power(i / 2) * prefactor * sum;
}

double derivative_G_at_T(const FourierPulse& pulse, const PhysicalParams& params, int i) {
  if (i < 1) throw PreconditionError("derivative order i must be >= 1");
  const double prefactor = kSqrt2 * params.eta() * std::pow(params.xi0(), i - 1);
  double sum = 0.0;
  if (i % 2 == 0) {
    sum = 0.5 * pulse.a0();
    for (int n = 1; n <= pulse.order(); ++n) sum += pulse.a(n) * leibniz_weight(i, 1, (i - 2) / 2, n);
    return sign_power(i / 2) * prefactor * sum;
  }
  // Odd i: the sine derivatives pick odd binomial indices; i = 1 leaves an empty sum.
  for (int n = 1; n <= pulse.order(); ++n) sum += pulse.b(n) * leibniz_weight(i, 1, (i - 3) / 2, n);
  return sign_power((i - 1) / 2) * prefactor * sum;
}

std::vector<TrajectoryPoint> sample_trajectory(const FourierPulse& pulse, const PhysicalParams& params,
                                               std::span<const double> t_grid) {
  if (t_grid.empty()) throw PreconditionError("trajectory grid is empty");
  if (t_grid.front() < 0.0) throw PreconditionError("trajectory grid must start at t >= 0");
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] >= t_grid[k - 1])) throw PreconditionError("trajectory grid must be ascending");

  auto integrand = [&](double s) { return closed_form_F(pulse, params, s) * coupling_g(pulse, params, s); };

  std::vector<TrajectoryPoint> points;
  points.reserve(t_grid.size());
  double phase = geometric_phase(pulse, params, t_grid.front());
  double prev = t_grid.front();
  for (double t : t_grid) {
    phase -= integrate(integrand, prev, t, kPhaseQuadrature).value;
    prev = t;
    points.push_back({t, closed_form_F(pulse, params, t), closed_form_G(pulse, params, t), phase});
  }
  return points;
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> points) {
  out << "t,G,negF,A\n";
  out << std::setprecision(17);
  for (const auto& p : points) out << p.t << ',' << p.G << ',' << (p.F == 0.0 ? 0.0 : -p.F) << ',' << p.A << '\n';
}

}  // namespace amgate
