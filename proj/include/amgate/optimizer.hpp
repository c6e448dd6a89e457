#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "amgate/constraints.hpp"
#include "amgate/linalg.hpp"
#include "amgate/pulse.hpp"

namespace amgate {

/// Power and phase as diagonal quadratic forms over a = (a0, a2, ..., aN).
struct QuadraticForms {
  int order = 0;
  std::vector<double> power_diag;  // 1/4, 1/2, ..., 1/2
  std::vector<double> phase_diag;  // -1/4, 1/6, ..., 1/(2(N^2-1))

  Matrix power() const { return Matrix::diagonal(power_diag); }
  Matrix phase() const { return Matrix::diagonal(phase_diag); }
};

QuadraticForms build_forms(int order);

/// Forms restricted to a subspace: P' = Z^T P Z, A' = Z^T A Z.
struct ReducedProblem {
  Matrix power;
  Matrix phase;
  Matrix basis;  // Z, columns in coefficient space (a0, a2, ..., aN)
  int lc_count = 0;
  int order = 0;
};

ReducedProblem reduce(const QuadraticForms& forms, const Matrix& basis, int lc_count = 0);

/// Hand-eliminated reduced matrices. One constraint: indices i, j = 2..N with a0 eliminated.
ReducedProblem explicit_reduced_1lc(int order);
/// Two constraints: indices i, j = 3..N with a0 and a2 eliminated.
ReducedProblem explicit_reduced_2lc(int order);

struct RayleighSolution {
  double eigenvalue = 0.0;          // selected extreme of the (A', P') pencil
  double opposite_extreme = 0.0;    // extreme eigenvalue at the other end of the spectrum
  std::vector<double> reduced;      // a' in the reduced coordinates
  std::vector<double> coefficients; // Z a', in (a0, a2, ..., aN)
  double residual = 0.0;            // |S x - lambda x| / |S|
  bool sign_warning = false;        // largest |lambda| was positive; negative branch taken instead
};

/// Maximizes |a^T A a / a^T P a| through S = P'^(-1/2) A' P'^(-1/2).
/// Sign convention of the returned direction: a0 > 0 (first nonzero component when a0 vanishes).
RayleighSolution solve_rayleigh(const ReducedProblem& problem);

struct OptimalPulse {
  FourierPulse pulse{1};  // rescaled so that |A(T)| = pi/2
  int order = 0;
  int lc_count = 0;
  double eigenvalue = 0.0;
  double ratio = 0.0;           // |A| / P
  double power_overhead = 0.0;  // P relative to the constant pulse at the same phase, = 1/ratio
  double constraint_residual = 0.0;
  double eigen_residual = 0.0;
  double phase_residual = 0.0;  // | |A(T)| - pi/2 | by quadrature
  bool sign_warning = false;

  double overhead_percent() const { return (power_overhead - 1.0) * 100.0; }
};

/// Full pipeline: constraints -> null space -> reduced forms -> eigenproblem -> rescale.
OptimalPulse optimize_pulse(int order, int lc_count, const PhysicalParams& params);

/// Converts reduced coefficients (a0, a2, ..., aN) into a pulse with a1 = 0 and b = 0.
FourierPulse pulse_from_coefficients(std::span<const double> coefficients);

/// {"N", "l", "eigenvalue", "ratio", "power_overhead_percent", "pulse", "residuals": {...}}
nlohmann::json optimal_pulse_to_json(const OptimalPulse& result);

}  // namespace amgate
