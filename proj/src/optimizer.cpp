#include "amgate/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "amgate/errors.hpp"
#include "amgate/trajectory.hpp"

namespace amgate {

QuadraticForms build_forms(int order) {
  if (order < 2) throw PreconditionError("quadratic forms need N >= 2");
  QuadraticForms forms;
  forms.order = order;
  forms.power_diag.push_back(0.25);
  forms.phase_diag.push_back(-0.25);
  for (int n = 2; n <= order; ++n) {
    forms.power_diag.push_back(0.5);
    forms.phase_diag.push_back(0.5 / (static_cast<double>(n) * n - 1.0));
  }
  return forms;
}

ReducedProblem reduce(const QuadraticForms& forms, const Matrix& basis, int lc_count) {
  if (basis.rows() != forms.power_diag.size())
    throw PreconditionError("reduce: basis has " + std::to_string(basis.rows()) + " rows, forms have dimension " +
                            std::to_string(forms.power_diag.size()));
  const std::size_t m = basis.cols();
  ReducedProblem rp;
  rp.power = Matrix(m, m);
  rp.phase = Matrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double p = 0.0;
      double a = 0.0;
      for (std::size_t k = 0; k < basis.rows(); ++k) {
        const double zz = basis(k, i) * basis(k, j);
        p += forms.power_diag[k] * zz;
        a += forms.phase_diag[k] * zz;
      }
      rp.power(i, j) = p;
      rp.phase(i, j) = a;
    }
  rp.power = rp.power.symmetrized();
  rp.phase = rp.phase.symmetrized();
  rp.basis = basis;
  rp.lc_count = lc_count;
  rp.order = forms.order;
  return rp;
}

ReducedProblem explicit_reduced_1lc(int order) {
  if (order < 2) throw PreconditionError("one-constraint reduction needs N >= 2");
  const int m = order - 1;  // free coefficients a2..aN
  ReducedProblem rp;
  rp.power = Matrix(m, m);
  rp.phase = Matrix(m, m);
  // a0 = -2 sum_{n>=2} a_n
  rp.basis = Matrix(order, m);
  for (int i = 0; i < m; ++i) {
    const double j = i + 2.0;
    rp.basis(0, i) = -2.0;
    rp.basis(i + 1, i) = 1.0;
    for (int k = 0; k < m; ++k) {
      rp.power(i, k) = 1.0 + (i == k ? 0.5 : 0.0);
      rp.phase(i, k) = -1.0 + (i == k ? 1.0 / (2.0 * (j * j - 1.0)) : 0.0);
    }
  }
  rp.lc_count = 1;
  rp.order = order;
  return rp;
}

ReducedProblem explicit_reduced_2lc(int order) {
  if (order < 3) throw PreconditionError("two-constraint reduction needs N >= 3");
  const int m = order - 2;  // free coefficients a3..aN
  ReducedProblem rp;
  rp.power = Matrix(m, m);
  rp.phase = Matrix(m, m);
  // a2 = -(1/4) sum n^2 a_n, a0 = (1/2) sum (n^2 - 4) a_n, both over n >= 3
  rp.basis = Matrix(order, m);
  for (int i = 0; i < m; ++i) {
    const double ni = i + 3.0;
    rp.basis(0, i) = 0.5 * (ni * ni - 4.0);
    rp.basis(1, i) = -0.25 * ni * ni;
    rp.basis(i + 2, i) = 1.0;
    for (int k = 0; k < m; ++k) {
      const double nk = k + 3.0;
      const double cross4 = (ni * ni - 4.0) * (nk * nk - 4.0);
      const double cross = ni * ni * nk * nk;
      rp.power(i, k) = cross4 / 16.0 + cross / 32.0 + (i == k ? 0.5 : 0.0);
      rp.phase(i, k) = -cross4 / 16.0 + cross / 96.0 + (i == k ? 1.0 / (2.0 * (nk * nk - 1.0)) : 0.0);
    }
  }
  rp.lc_count = 2;
  rp.order = order;
  return rp;
}

RayleighSolution solve_rayleigh(const ReducedProblem& problem) {
  const std::size_t m = problem.power.rows();
  if (m == 0 || problem.power.cols() != m || problem.phase.rows() != m || problem.phase.cols() != m)
    throw PreconditionError("solve_rayleigh: reduced matrices must be square and of equal size");
  if (problem.basis.cols() != m) throw PreconditionError("solve_rayleigh: basis does not match reduced size");

  const auto pe = jacobi_eigen(problem.power);
  const double pmax = pe.values.back();
  const double pmin = pe.values.front();
  if (!(pmin > 1e-12 * pmax)) {
    std::ostringstream msg;
    msg << "reduced power matrix is not safely positive definite (condition number "
        << (pmin > 0.0 ? pmax / pmin : INFINITY) << ")";
    throw NumericalError(msg.str());
  }

  // P'^(-1/2) = V diag(1/sqrt(lambda)) V^T
  Matrix inv_sqrt(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += pe.vectors(i, k) * pe.vectors(j, k) / std::sqrt(pe.values[k]);
      inv_sqrt(i, j) = s;
    }
  const Matrix s_mat = (inv_sqrt * problem.phase * inv_sqrt).symmetrized();
  const auto se = jacobi_eigen(s_mat);
  const double lo = se.values.front();
  const double hi = se.values.back();

  RayleighSolution sol;
  bool take_low = std::abs(lo) >= std::abs(hi);
  if (!take_low) {
    if (lo < 0.0) {
      sol.sign_warning = true;
      take_low = true;
      std::clog << "warning: largest |eigenvalue| " << hi << " is positive; taking negative extreme " << lo << '\n';
    }
  }
  sol.eigenvalue = take_low ? lo : hi;
  sol.opposite_extreme = take_low ? hi : lo;

  // Eigenvectors within 1e-10 of the selected value form the degenerate extreme subspace.
  std::vector<std::size_t> cluster;
  for (std::size_t k = 0; k < m; ++k)
    if (std::abs(se.values[k] - sol.eigenvalue) < 1e-10) cluster.push_back(k);

  auto to_coefficients = [&](std::span<const double> x) {
    const auto reduced = inv_sqrt * x;
    return std::pair{reduced, problem.basis * std::span<const double>(reduced)};
  };

  std::vector<double> x(m, 0.0);
  if (cluster.size() == 1) {
    x = se.vectors.col(cluster.front());
  } else {
    // Combination of the degenerate vectors maximizing |a0| for unit x.
    double norm = 0.0;
    for (std::size_t k : cluster) {
      const auto xk = se.vectors.col(k);
      const double w = to_coefficients(xk).second.front();
      norm += w * w;
      for (std::size_t i = 0; i < m; ++i) x[i] += w * xk[i];
    }
    if (norm == 0.0) {
      x = se.vectors.col(cluster.front());
    } else {
      const double len = norm2(x);
      for (double& v : x) v /= len;
    }
  }

  std::vector<double> sx = s_mat * std::span<const double>(x);
  double res = 0.0;
  for (std::size_t i = 0; i < m; ++i) res += (sx[i] - sol.eigenvalue * x[i]) * (sx[i] - sol.eigenvalue * x[i]);
  const double s_norm = std::max(std::abs(lo), std::abs(hi));
  sol.residual = s_norm > 0.0 ? std::sqrt(res) / s_norm : std::sqrt(res);

  auto [reduced, coefficients] = to_coefficients(x);
  const double sign = [&] {
    for (double c : coefficients)
      if (c != 0.0) return c < 0.0 ? -1.0 : 1.0;
    return 1.0;
  }();
  for (double& v : reduced) v *= sign;
  for (double& v : coefficients) v *= sign;
  sol.reduced = std::move(reduced);
  sol.coefficients = std::move(coefficients);
  return sol;
}

FourierPulse pulse_from_coefficients(std::span<const double> coefficients) {
  if (coefficients.size() < 2) throw PreconditionError("need coefficients (a0, a2, ..., aN) with N >= 2");
  const int order = static_cast<int>(coefficients.size());
  FourierPulse pulse(order);
  pulse.set_a0(coefficients[0]);
  for (int n = 2; n <= order; ++n) pulse.set_a(n, coefficients[n - 1]);
  return pulse;
}

OptimalPulse optimize_pulse(int order, int lc_count, const PhysicalParams& params) {
  const auto system = build_constraint_matrix(lc_count, order);
  const auto basis = nullspace_basis(system);
  const auto problem = reduce(build_forms(order), basis, lc_count);
  const auto sol = solve_rayleigh(problem);

  OptimalPulse out;
  out.order = order;
  out.lc_count = lc_count;
  out.eigenvalue = sol.eigenvalue;
  out.ratio = std::abs(sol.eigenvalue);
  out.power_overhead = 1.0 / out.ratio;
  out.eigen_residual = sol.residual;
  out.sign_warning = sol.sign_warning;

  const auto ca = system.matrix * std::span<const double>(sol.coefficients);
  double cmax = 0.0;
  double amax = 0.0;
  for (double v : ca) cmax = std::max(cmax, std::abs(v));
  for (double v : sol.coefficients) amax = std::max(amax, std::abs(v));
  out.constraint_residual = cmax / amax;

  out.pulse = rescale_to_target_phase(pulse_from_coefficients(sol.coefficients), params);
  out.phase_residual =
      std::abs(std::abs(geometric_phase(out.pulse, params, params.gate_time())) - std::numbers::pi / 2.0);
  return out;
}

nlohmann::json optimal_pulse_to_json(const OptimalPulse& result) {
  return {{"N", result.order},
          {"l", result.lc_count},
          {"eigenvalue", result.eigenvalue},
          {"ratio", result.ratio},
          {"power_overhead_percent", result.overhead_percent()},
          {"pulse", pulse_to_json(result.pulse)},
          {"residuals",
           {{"constraint", result.constraint_residual},
            {"eigen", result.eigen_residual},
            {"phase", result.phase_residual}}}};
}

}  // namespace amgate
