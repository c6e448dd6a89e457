#include "amgate/fock.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "amgate/errors.hpp"

namespace amgate {

MotionalState MotionalState::fock(int n) {
  if (n < 0) throw PreconditionError("Fock level must be non-negative");
  MotionalState s;
  s.kind_ = Kind::fock;
  s.level_ = n;
  return s;
}

MotionalState MotionalState::thermal(double nbar) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw PreconditionError("thermal nbar must be non-negative");
  MotionalState s;
  s.kind_ = Kind::thermal;
  s.nbar_ = nbar;
  return s;
}

std::vector<double> MotionalState::weights(double mass_tol) const {
  if (kind_ == Kind::fock) {
    std::vector<double> w(level_ + 1, 0.0);
    w[level_] = 1.0;
    return w;
  }
  std::vector<double> w;
  const double ratio = nbar_ / (nbar_ + 1.0);
  double p = 1.0 / (nbar_ + 1.0);
  double mass = 0.0;
  while (mass < 1.0 - mass_tol) {
    w.push_back(p);
    mass += p;
    p *= ratio;
    if (w.size() > 100000) throw PreconditionError("thermal distribution too wide to truncate");
  }
  for (double& x : w) x /= mass;
  return w;
}

std::shared_ptr<const PositionEigenbasis> position_eigenbasis(int cutoff) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const PositionEigenbasis>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(cutoff); it != cache.end()) return it->second;
  }
  const std::size_t n = static_cast<std::size_t>(cutoff) + 1;
  Matrix x(n, n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double elem = std::sqrt((k + 1.0) / 2.0);
    x(k, k + 1) = elem;
    x(k + 1, k) = elem;
  }
  auto eig = jacobi_eigen(x);
  auto basis = std::make_shared<PositionEigenbasis>();
  basis->cutoff = cutoff;
  basis->values = std::move(eig.values);
  basis->vectors = std::move(eig.vectors);

  std::lock_guard lock(mutex);
  return cache.emplace(cutoff, std::move(basis)).first->second;
}

namespace {

// Jy eigenvectors in the (gg, ge, eg, ee) basis, built from sigma_y eigenvectors (1, +-i)/sqrt(2).
struct SpinBasis {
  std::array<std::array<cplx, 4>, 4> vec;  // vec[j][s]
  std::array<int, 4> m;
};

const SpinBasis& spin_basis() {
  static const SpinBasis basis = [] {
    SpinBasis b;
    const cplx i{0.0, 1.0};
    const std::array<std::array<cplx, 2>, 2> single = {{{1.0, i}, {1.0, -i}}};  // eigenvalues +1, -1
    const std::array<int, 2> sign = {1, -1};
    int j = 0;
    for (int q1 = 0; q1 < 2; ++q1)
      for (int q2 = 0; q2 < 2; ++q2, ++j) {
        for (int s1 = 0; s1 < 2; ++s1)
          for (int s2 = 0; s2 < 2; ++s2) b.vec[j][2 * s1 + s2] = 0.5 * single[q1][s1] * single[q2][s2];
        b.m[j] = (sign[q1] + sign[q2]) / 2;
      }
    return b;
  }();
  return basis;
}

}  // namespace

FockPropagator::FockPropagator(double F, double G, double A, int cutoff)
    : F_(F), G_(G), A_(A), cutoff_(cutoff), basis_(nullptr) {
  if (cutoff < 10) throw PreconditionError("Fock cutoff must be >= 10");
  basis_ = position_eigenbasis(cutoff);
}

void FockPropagator::apply_position(std::vector<cplx>& v, double theta) const {
  const std::size_t n = levels();
  const Matrix& vec = basis_->vectors;
  std::vector<cplx> coeff(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0.0) continue;
    for (std::size_t k = 0; k < n; ++k) coeff[k] += vec(i, k) * v[i];
  }
  for (std::size_t k = 0; k < n; ++k) coeff[k] *= std::polar(1.0, -theta * basis_->values[k]);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += vec(i, k) * coeff[k];
    v[i] = s;
  }
}

void FockPropagator::apply_momentum(std::vector<cplx>& v, double theta) const {
  static const std::array<cplx, 4> ipow = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
  const std::size_t n = levels();
  for (std::size_t k = 0; k < n; ++k) v[k] *= std::conj(ipow[k % 4]);
  apply_position(v, theta);
  for (std::size_t k = 0; k < n; ++k) v[k] *= ipow[k % 4];
}

std::vector<cplx> FockPropagator::apply(std::span<const cplx> state) const {
  const std::size_t n = levels();
  if (state.size() != dimension()) throw PreconditionError("state dimension does not match propagator");
  const auto& sb = spin_basis();

  std::vector<cplx> out(dimension(), 0.0);
  std::vector<cplx> phi(n);
  for (int j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      cplx s = 0.0;
      for (int sp = 0; sp < 4; ++sp) s += std::conj(sb.vec[j][sp]) * state[sp * n + k];
      phi[k] = s;
    }
    const int m = sb.m[j];
    if (m != 0) {
      apply_momentum(phi, m * G_);
      apply_position(phi, m * F_);
      const cplx phase = std::polar(1.0, -A_ * m * m);
      for (auto& x : phi) x *= phase;
    }
    for (int sp = 0; sp < 4; ++sp)
      for (std::size_t k = 0; k < n; ++k) out[sp * n + k] += sb.vec[j][sp] * phi[k];
  }
  return out;
}

std::vector<cplx> FockPropagator::matrix() const {
  const std::size_t dim = dimension();
  std::vector<cplx> u(dim * dim);
  std::vector<cplx> e(dim, 0.0);
  for (std::size_t c = 0; c < dim; ++c) {
    e[c] = 1.0;
    const auto col = apply(e);
    std::copy(col.begin(), col.end(), u.begin() + c * dim);
    e[c] = 0.0;
  }
  return u;
}

double FockPropagator::unitarity_deviation() const {
  const std::size_t n = levels();
  const std::size_t dim = dimension();
  std::vector<std::vector<cplx>> cols;
  std::vector<cplx> e(dim, 0.0);
  for (int sp = 0; sp < 4; ++sp)
    for (std::size_t k = 0; k <= n / 2; ++k) {
      e[sp * n + k] = 1.0;
      cols.push_back(apply(e));
      e[sp * n + k] = 0.0;
    }
  double worst = 0.0;
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t b = a; b < cols.size(); ++b) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < dim; ++i) s += std::conj(cols[a][i]) * cols[b][i];
      if (a == b) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

FockPropagator propagator_fock(double F, double G, double A, int cutoff) { return {F, G, A, cutoff}; }

std::array<cplx, 4> ideal_state() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {cplx{r, 0.0}, 0.0, 0.0, cplx{0.0, r}};
}

}  // namespace amgate
