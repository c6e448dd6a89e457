#include "amgate/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "amgate/errors.hpp"
#include "amgate/quadrature.hpp"
#include "amgate/trajectory.hpp"

namespace amgate::oracle {

namespace {

double coefficient_scale(const FourierPulse& pulse, const PhysicalParams& params) {
  double s = std::abs(pulse.a0()) / 2.0;
  for (int n = 1; n <= pulse.order(); ++n) s += std::abs(pulse.a(n)) + std::abs(pulse.b(n));
  return std::numbers::sqrt2 * params.eta() * std::max(s, std::numeric_limits<double>::min());
}

template <class Integrand>
double increment(Integrand&& f, const FourierPulse& pulse, const PhysicalParams& params, double t0, double t1) {
  const double scale = coefficient_scale(pulse, params);
  const QuadratureOptions opts{2e-14 * scale * std::max(std::abs(t1 - t0), 1e-300), 1e-15, 50, 20000};
  return integrate(f, t0, t1, opts).value;
}

}  // namespace

double quadrature_F(const FourierPulse& pulse, const PhysicalParams& params, double t0, double t1) {
  return increment([&](double t) { return coupling_f(pulse, params, t); }, pulse, params, t0, t1);
}

double quadrature_G(const FourierPulse& pulse, const PhysicalParams& params, double t0, double t1) {
  return increment([&](double t) { return coupling_g(pulse, params, t); }, pulse, params, t0, t1);
}

std::vector<double> fornberg_weights(int derivative, std::span<const double> nodes) {
  const int n = static_cast<int>(nodes.size());
  if (derivative < 0 || n <= derivative) throw PreconditionError("stencil too small for the derivative order");
  // c[j][k]: weight of node j for the k-th derivative.
  std::vector<std::vector<double>> c(n, std::vector<double>(derivative + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, derivative);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][derivative];
  return w;
}

double richardson_derivative(const std::function<double(double)>& fn, double x, int derivative, double h) {
  if (derivative < 1) throw PreconditionError("derivative order must be >= 1");
  if (!(h > 0.0)) throw PreconditionError("finite-difference step must be positive");
  const int half = (derivative + 1) / 2;
  std::vector<double> nodes;
  for (int k = -half; k <= half; ++k) nodes.push_back(k);
  const auto w = fornberg_weights(derivative, nodes);

  auto central = [&](double step) {
    double s = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (w[j] != 0.0) s += w[j] * fn(x + nodes[j] * step);
    return s / std::pow(step, derivative);
  };
  const double d1 = central(h);
  const double d2 = central(h / 2.0);
  const double d3 = central(h / 4.0);
  const double r12 = (4.0 * d2 - d1) / 3.0;
  const double r23 = (4.0 * d3 - d2) / 3.0;
  return (16.0 * r23 - r12) / 15.0;
}

double derivative_step(const FourierPulse& pulse, const PhysicalParams& params) {
  return 0.3 / ((pulse.order() + 1) * params.xi0());
}

double fd_derivative_F(const FourierPulse& pulse, const PhysicalParams& params, int i) {
  const double T = params.gate_time();
  return richardson_derivative([&](double x) { return quadrature_F(pulse, params, T, T + x); }, 0.0, i,
                               derivative_step(pulse, params));
}

double fd_derivative_G(const FourierPulse& pulse, const PhysicalParams& params, int i) {
  const double T = params.gate_time();
  return richardson_derivative([&](double x) { return quadrature_G(pulse, params, T, T + x); }, 0.0, i,
                               derivative_step(pulse, params));
}

Matrix elimination_basis(const Matrix& c) {
  const std::size_t rows = c.rows();
  const std::size_t cols = c.cols();
  Matrix m = c;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::abs(m(i, col)) > std::abs(m(best, col))) best = i;
    if (std::abs(m(best, col)) < 1e-13) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
    const double p = m(r, col);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, col) == 0.0) continue;
      const double f = m(i, col);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  if (pivots.size() != rows) throw NumericalError("elimination: constraint rows are linearly dependent");

  std::vector<std::size_t> free;
  for (std::size_t col = 0; col < cols; ++col)
    if (std::find(pivots.begin(), pivots.end(), col) == pivots.end()) free.push_back(col);

  Matrix z(cols, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    z(free[k], k) = 1.0;
    for (std::size_t i = 0; i < rows; ++i) z(pivots[i], k) = -m(i, free[k]);
  }
  return z;
}

std::vector<double> sample_nullspace(const Matrix& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> y(basis.cols());
  for (double& v : y) v = normal(rng);
  return basis * std::span<const double>(y);
}

namespace {

struct Pencil {
  Matrix a, p;
  double quotient(std::span<const double> y) const { return quadratic_form(a, y) / quadratic_form(p, y); }
};

// Steepest ascent (direction = +1) or descent (-1) of the Rayleigh quotient, with step halving.
double refine(const Pencil& pencil, std::vector<double>& y, double direction) {
  const std::size_t m = y.size();
  double value = pencil.quotient(y);
  double step = 1.0;
  for (int iter = 0; iter < 20000 && step > 1e-14; ++iter) {
    const auto ay = pencil.a * std::span<const double>(y);
    const auto py = pencil.p * std::span<const double>(y);
    const double denom = quadratic_form(pencil.p, y);
    std::vector<double> grad(m);
    for (std::size_t i = 0; i < m; ++i) grad[i] = 2.0 * (ay[i] - value * py[i]) / denom;
    const double gnorm = norm2(grad);
    if (gnorm == 0.0) break;
    bool improved = false;
    while (step > 1e-14) {
      std::vector<double> trial(m);
      for (std::size_t i = 0; i < m; ++i) trial[i] = y[i] + direction * step * grad[i] / gnorm * norm2(y);
      const double tv = pencil.quotient(trial);
      if (direction * (tv - value) > 0.0) {
        const double len = norm2(trial);
        for (std::size_t i = 0; i < m; ++i) y[i] = trial[i] / len;
        value = tv;
        step *= 2.0;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return value;
}

}  // namespace

BruteForceResult brute_force_ratio(int order, int lc_count, std::uint64_t seed, int samples) {
  const auto system = build_constraint_matrix(lc_count, order);
  const Matrix z = elimination_basis(system.matrix);
  const auto forms = build_forms(order);
  const Matrix zt = z.transposed();
  const Pencil pencil{zt * forms.phase() * z, zt * forms.power() * z};
  const std::size_t m = z.cols();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> lo_y, hi_y;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::vector<double> y(m);
  for (int s = 0; s < samples; ++s) {
    for (double& v : y) v = normal(rng);
    const double len = norm2(y);
    for (double& v : y) v /= len;
    const double q = pencil.quotient(y);
    if (q < lo) lo = q, lo_y = y;
    if (q > hi) hi = q, hi_y = y;
  }
  lo = refine(pencil, lo_y, -1.0);
  hi = refine(pencil, hi_y, 1.0);

  BruteForceResult out;
  const bool low = std::abs(lo) >= std::abs(hi);
  out.signed_value = low ? lo : hi;
  out.ratio = std::abs(out.signed_value);
  out.coefficients = z * std::span<const double>(low ? lo_y : hi_y);
  return out;
}

FourierPulse random_pulse(int order, std::mt19937_64& rng, bool closed, bool sine_terms) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FourierPulse p(order);
  p.set_a0(u(rng));
  for (int n = 1; n <= order; ++n) {
    const double a = u(rng);
    const double b = u(rng);
    if (closed && n == 1) continue;
    p.set_a(n, a);
    if (sine_terms) p.set_b(n, b);
  }
  return p;
}

double min_eigenvalue_hermitian4(std::span<const std::complex<double>> rho) {
  if (rho.size() != 16) throw PreconditionError("expected a 4x4 matrix");
  Matrix m(8, 8);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const auto z = 0.5 * (rho[4 * r + c] + std::conj(rho[4 * c + r]));
      m(r, c) = z.real();
      m(r + 4, c + 4) = z.real();
      m(r, c + 4) = -z.imag();
      m(r + 4, c) = z.imag();
    }
  return jacobi_eigen(m).values.front();
}

}  // namespace amgate::oracle
