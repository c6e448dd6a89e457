#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "amgate/constraints.hpp"
#include "amgate/linalg.hpp"
#include "amgate/optimizer.hpp"
#include "amgate/pulse.hpp"

// Reference implementations that share no formulas with the closed forms they check.
namespace amgate::oracle {

/// int_t0^t1 f(t) dt with f the raw coupling integrand.
double quadrature_F(const FourierPulse& pulse, const PhysicalParams& params, double t0, double t1);
double quadrature_G(const FourierPulse& pulse, const PhysicalParams& params, double t0, double t1);
inline double quadrature_F(const FourierPulse& pulse, const PhysicalParams& params, double t) {
  return quadrature_F(pulse, params, 0.0, t);
}
inline double quadrature_G(const FourierPulse& pulse, const PhysicalParams& params, double t) {
  return quadrature_G(pulse, params, 0.0, t);
}

/// Weights of the finite-difference approximation of the given derivative order at 0 over
/// the nodes (Fornberg's recursion).
std::vector<double> fornberg_weights(int derivative, std::span<const double> nodes);

/// Central differences on steps h, h/2, h/4 combined by two Richardson levels (ratios 4, 16).
double richardson_derivative(const std::function<double(double)>& fn, double x, int derivative, double h);

/// Base step for derivatives of F and G at T: 0.3 / ((N + 1) xi0), relative to the fastest
/// harmonic (N + 1) xi0 of the integrands. Smaller steps lose the fifth derivative to round-off.
double derivative_step(const FourierPulse& pulse, const PhysicalParams& params);

/// i-th derivative of F (or G) at T from finite differences of quadrature increments
/// int_T^{T+x} f.
double fd_derivative_F(const FourierPulse& pulse, const PhysicalParams& params, int i);
double fd_derivative_G(const FourierPulse& pulse, const PhysicalParams& params, int i);

/// Null-space basis by elimination: the first rows.size() coefficients are solved for,
/// the remaining ones are free. Not orthonormal.
Matrix elimination_basis(const Matrix& c);

/// Random point Z y of ker C with y ~ N(0, 1).
std::vector<double> sample_nullspace(const Matrix& basis, std::mt19937_64& rng);

struct BruteForceResult {
  double ratio = 0.0;   // max |a^T A a / a^T P a| found
  double signed_value = 0.0;
  std::vector<double> coefficients;
};

/// Constrained maximization of |a^T A a / a^T P a| over ker C without any eigen solve:
/// random unit directions in an elimination basis, then projected gradient refinement of
/// the best candidates on both branches.
BruteForceResult brute_force_ratio(int order, int lc_count, std::uint64_t seed, int samples = 100000);

/// Random coefficients U(-1, 1). closed = true zeroes a1 and b1.
FourierPulse random_pulse(int order, std::mt19937_64& rng, bool closed = true, bool sine_terms = true);

/// Smallest eigenvalue of a 4x4 Hermitian matrix (row-major), via its real 8x8 embedding.
double min_eigenvalue_hermitian4(std::span<const std::complex<double>> rho);

}  // namespace amgate::oracle
