#include "amgate/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "amgate/errors.hpp"
#include "amgate/trajectory.hpp"

namespace amgate {

ConstraintSystem build_constraint_matrix(int lc_count, int order, bool include_b) {
  if (lc_count < 1) throw PreconditionError("number of linear constraints must be >= 1");
  if (order < lc_count + 1)
    throw PreconditionError("over-constrained system: N = " + std::to_string(order) + " < l + 1 = " +
                            std::to_string(lc_count + 1));

  ConstraintSystem sys;
  sys.lc_count = lc_count;
  sys.order = order;
  sys.include_b = include_b;

  const int b_rows = include_b ? lc_count - 1 : 0;
  const int b_cols = include_b ? order - 1 : 0;
  sys.matrix = Matrix(lc_count + b_rows, order + b_cols);

  sys.column_names.push_back("a0");
  for (int n = 2; n <= order; ++n) sys.column_names.push_back("a" + std::to_string(n));
  for (int n = 2; n <= order && include_b; ++n) sys.column_names.push_back("b" + std::to_string(n));

  for (int r = 0; r < lc_count; ++r) {
    const int i = 2 * r + 1;
    sys.matrix(r, 0) = i == 1 ? 0.5 : 0.0;
    for (int n = 2; n <= order; ++n) sys.matrix(r, n - 1) = std::pow(n, i - 1);
  }
  for (int r = 0; r < b_rows; ++r) {
    const int i = 2 * (r + 1);
    for (int n = 2; n <= order; ++n) sys.matrix(lc_count + r, order + n - 2) = std::pow(n, i - 1);
  }
  return sys;
}

Matrix nullspace_basis(const Matrix& c) {
  const std::size_t rows = c.rows();
  const std::size_t cols = c.cols();
  if (cols <= rows)
    throw PreconditionError("constraint matrix has no free coefficients (" + std::to_string(rows) + " rows, " +
                            std::to_string(cols) + " columns)");

  const auto qr = householder_qr(c.transposed());
  double scale = 0.0;
  for (std::size_t j = 0; j < rows; ++j) scale = std::max(scale, std::abs(qr.r(j, j)));
  for (std::size_t j = 0; j < rows; ++j)
    if (std::abs(qr.r(j, j)) <= 1e-12 * scale)
      throw NumericalError("constraint matrix is rank deficient: row " + std::to_string(j) +
                           " depends on the preceding rows");

  Matrix z(cols, cols - rows);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = rows; j < cols; ++j) z(i, j - rows) = qr.q(i, j);
  return z;
}

OrderReport verify_order(const FourierPulse& pulse, const PhysicalParams& params, int k) {
  pulse.require_closed();
  if (k < 0) throw PreconditionError("order k must be non-negative");

  OrderReport report;
  report.k = k;
  report.tolerance = 1e-9 * params.eta();
  const double T = params.gate_time();
  const double xi0 = params.xi0();
  auto add = [&](std::string name, double value) {
    const double r = std::abs(value);
    if (r >= report.max_residual) {
      report.max_residual = r;
      report.worst = name;
    }
    report.terms.push_back({std::move(name), r});
  };
  add("F(T)", closed_form_F(pulse, params, T) * xi0);
  add("G(T)", closed_form_G(pulse, params, T) * xi0);
  for (int i = 1; i <= k; ++i) {
    const double unit = std::pow(xi0, i - 1);
    add("F^(" + std::to_string(i) + ")(T)", derivative_F_at_T(pulse, params, i) / unit);
    add("G^(" + std::to_string(i) + ")(T)", derivative_G_at_T(pulse, params, i) / unit);
  }
  report.passed = report.max_residual < report.tolerance;
  return report;
}

RedundancyReport verify_redundancy(const FourierPulse& pulse, const PhysicalParams& params) {
  RedundancyReport report;
  report.tolerance = 1e-10 * params.eta() * std::pow(params.xi0(), 3);

  double first = 0.5 * pulse.a0();
  double first_scale = 0.5 * std::abs(pulse.a0());
  double third = 0.0;
  double third_scale = 0.0;
  for (int n = 1; n <= pulse.order(); ++n) {
    first += pulse.a(n);
    first_scale += std::abs(pulse.a(n));
    third += pulse.a(n) * n * n;
    third_scale += std::abs(pulse.a(n)) * n * n;
  }
  const double rel_first = first_scale > 0.0 ? std::abs(first) / first_scale : 0.0;
  const double rel_third = third_scale > 0.0 ? std::abs(third) / third_scale : 0.0;
  report.constraint_residual = std::max(rel_first, rel_third);
  report.precondition_met = report.constraint_residual < 1e-12;
  if (!report.precondition_met) {
    report.message = "precondition violated: sum a_n + a0/2 and sum n^2 a_n must vanish (relative residual " +
                     std::to_string(report.constraint_residual) + ")";
    return report;
  }
  report.g4 = derivative_G_at_T(pulse, params, 4);
  report.passed = std::abs(report.g4) < report.tolerance;
  report.message = report.passed ? "G^(4)(T) vanishes without being imposed"
                                 : "G^(4)(T) = " + std::to_string(report.g4) + " exceeds tolerance";
  return report;
}

void write_constraint_csv(std::ostream& out, const ConstraintSystem& system) {
  for (std::size_t j = 0; j < system.column_names.size(); ++j) out << (j ? "," : "") << system.column_names[j];
  out << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < system.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < system.matrix.cols(); ++j) out << (j ? "," : "") << system.matrix(i, j);
    out << '\n';
  }
}

}  // namespace amgate
