#include "amgate/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

#include "amgate/errors.hpp"

namespace amgate {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

std::vector<double> Matrix::col(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::symmetrized() const {
  assert(rows_ == cols_);
  Matrix s(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
  return s;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows())
    throw PreconditionError("matrix product: inner dimensions " + std::to_string(lhs.cols()) +
                            " and " + std::to_string(rhs.rows()) + " differ");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double lik = lhs(i, k);
      if (lik == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += lik * rhs(k, j);
    }
  return out;
}

Matrix operator-(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw PreconditionError("matrix difference: shape mismatch");
  Matrix out(lhs.rows(), lhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j) out(i, j) = lhs(i, j) - rhs(i, j);
  return out;
}

std::vector<double> operator*(const Matrix& m, std::span<const double> v) {
  if (m.cols() != v.size()) throw PreconditionError("matrix-vector product: dimension mismatch");
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), v);
  return out;
}

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (double x : m.data()) best = std::max(best, std::abs(x));
  return best;
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double quadratic_form(const Matrix& m, std::span<const double> x, std::span<const double> y) {
  const auto my = m * y;
  return dot(x, my);
}

SymmetricEigen jacobi_eigen(const Matrix& symmetric, int max_sweeps) {
  const std::size_t n = symmetric.rows();
  if (symmetric.cols() != n) throw PreconditionError("jacobi_eigen: matrix is not square");

  Matrix a = symmetric.symmetrized();
  Matrix v = Matrix::identity(n);
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = b[i] = a(i, i);

  auto rotate = [](Matrix& m, std::size_t i, std::size_t j, std::size_t k, std::size_t l, double s,
                   double tau) {
    const double g = m(i, j);
    const double h = m(k, l);
    m(i, j) = g - s * (h + g * tau);
    m(k, l) = h + s * (g - h * tau);
  };

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    if (off == 0.0) break;

    const double thresh = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::abs(a(p, q));
        // After a few sweeps, drop elements that can no longer change the diagonal.
        if (sweep > 3 && std::abs(d[p]) + g == std::abs(d[p]) && std::abs(d[q]) + g == std::abs(d[q])) {
          a(p, q) = 0.0;
          continue;
        }
        if (std::abs(a(p, q)) <= thresh) continue;

        const double h = d[q] - d[p];
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = a(p, q) / h;
        } else {
          const double theta = 0.5 * h / a(p, q);
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double shift = t * a(p, q);
        z[p] -= shift;
        z[q] += shift;
        d[p] -= shift;
        d[q] += shift;
        a(p, q) = 0.0;
        for (std::size_t j = 0; j < p; ++j) rotate(a, j, p, j, q, s, tau);
        for (std::size_t j = p + 1; j < q; ++j) rotate(a, p, j, j, q, s, tau);
        for (std::size_t j = q + 1; j < n; ++j) rotate(a, p, j, q, j, s, tau);
        for (std::size_t j = 0; j < n; ++j) rotate(v, j, p, j, q, s, tau);
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      b[p] += z[p];
      d[p] = b[p];
      z[p] = 0.0;
    }
  }
  if (sweep == max_sweeps)
    throw NumericalError("jacobi_eigen: no convergence after " + std::to_string(max_sweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

QRDecomposition householder_qr(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) throw PreconditionError("householder_qr: expected rows >= cols");

  Matrix r = a;
  Matrix q = Matrix::identity(m);
  std::vector<double> v(m);
  for (std::size_t k = 0; k < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k; i < m; ++i) alpha += r(i, k) * r(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (r(k, k) > 0.0) alpha = -alpha;

    std::fill(v.begin(), v.end(), 0.0);
    v[k] = r(k, k) - alpha;
    for (std::size_t i = k + 1; i < m; ++i) v[i] = r(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;

    // R <- (I - 2vv^T/|v|^2) R
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i] * r(i, j);
      s = 2.0 * s / vnorm2;
      for (std::size_t i = k; i < m; ++i) r(i, j) -= s * v[i];
    }
    // Q <- Q (I - 2vv^T/|v|^2)
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t j = k; j < m; ++j) s += q(i, j) * v[j];
      s = 2.0 * s / vnorm2;
      for (std::size_t j = k; j < m; ++j) q(i, j) -= s * v[j];
    }
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
  }
  return {std::move(q), std::move(r)};
}

}  // namespace amgate
