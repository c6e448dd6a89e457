#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "amgate/errors.hpp"

namespace amgate {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  int max_depth = 40;
  int max_intervals = 20000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes on [-1, 1] (positive half, centre last).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  int depth;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class Fn>
Panel kronrod_panel(Fn& f, double lo, double hi, int depth) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(centre);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(fc) * kKronrodWeights[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = f(centre - dx);
    const double f2 = f(centre + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  double error = std::abs((kronrod - gauss) * half);
  // Below the rounding level of the panel the Gauss/Kronrod difference carries no information.
  const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
  if (error < round_floor) error = round_floor;
  return {lo, hi, value, error, depth};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) integration with bisection of the worst panel.
/// Integration from a to b with b < a returns the negated integral over [b, a].
/// Throws NumericalError carrying the achieved error when the tolerance cannot be met
/// before max_depth or max_intervals is reached.
template <class Fn>
QuadratureResult integrate(Fn&& f, double a, double b, const QuadratureOptions& opts = {}) {
  if (a == b) return {};
  const double sign = b < a ? -1.0 : 1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  std::priority_queue<detail::Panel> work;
  work.push(detail::kronrod_panel(f, lo, hi, 0));
  double total = work.top().value;
  double error = work.top().error;
  std::vector<detail::Panel> frozen;  // panels at maximum depth

  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  int intervals = 1;
  while (!work.empty() && error > target()) {
    const detail::Panel worst = work.top();
    work.pop();
    if (worst.depth >= opts.max_depth || intervals >= opts.max_intervals) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    auto left = detail::kronrod_panel(f, worst.lo, mid, worst.depth + 1);
    auto right = detail::kronrod_panel(f, mid, worst.hi, worst.depth + 1);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
    ++intervals;
  }
  if (error > target()) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << lo << ", " << hi << "]: achieved error " << error
        << " > tolerance " << target() << " after " << intervals << " panels";
    throw NumericalError(msg.str());
  }
  // Re-sum to avoid drift from the incremental updates.
  double value = 0.0;
  double err = 0.0;
  for (; !work.empty(); work.pop()) {
    value += work.top().value;
    err += work.top().error;
  }
  for (const auto& p : frozen) {
    value += p.value;
    err += p.error;
  }
  return {sign * value, err, intervals};
}

}  // namespace amgate
