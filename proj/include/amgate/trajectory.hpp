#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "amgate/pulse.hpp"
#include "amgate/quadrature.hpp"

namespace amgate {

/// Spin-motion coupling integrands f(t) = -sqrt(2) eta Omega(t) cos(xi0 t)
/// and g(t) = -sqrt(2) eta Omega(t) sin(xi0 t).
double coupling_f(const FourierPulse& pulse, const PhysicalParams& params, double t);
double coupling_g(const FourierPulse& pulse, const PhysicalParams& params, double t);

/// F(t) = int_0^t f, in closed form. The a1/b1 secular terms are included.
double closed_form_F(const FourierPulse& pulse, const PhysicalParams& params, double t);
/// G(t) = int_0^t g, in closed form.
double closed_form_G(const FourierPulse& pulse, const PhysicalParams& params, double t);

/// Default accuracy for the geometric phase: 1e-12 * max(1, |A|).
inline constexpr QuadratureOptions kPhaseQuadrature{1e-12, 1e-12, 40, 20000};

/// A(t) = -int_0^t F(t') g(t') dt' by adaptive quadrature with F from the closed form.
/// Negative t integrates backwards, which the timing-error scans rely on.
double geometric_phase(const FourierPulse& pulse, const PhysicalParams& params, double t,
                       const QuadratureOptions& opts = kPhaseQuadrature);

/// i-th derivative (i >= 1) of F at the gate time T, from the Leibniz expansion.
double derivative_F_at_T(const FourierPulse& pulse, const PhysicalParams& params, int i);
/// i-th derivative (i >= 1) of G at the gate time T.
double derivative_G_at_T(const FourierPulse& pulse, const PhysicalParams& params, int i);

struct TrajectoryPoint {
  double t = 0.0;
  double F = 0.0;
  double G = 0.0;
  double A = 0.0;
};

/// F and G by closed form; A accumulated interval by interval in grid order.
std::vector<TrajectoryPoint> sample_trajectory(const FourierPulse& pulse, const PhysicalParams& params,
                                               std::span<const double> t_grid);

/// Columns t,G,negF,A with 17 significant digits.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> points);

}  // namespace amgate
