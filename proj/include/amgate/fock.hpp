#pragma once

#include <array>
#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "amgate/linalg.hpp"

namespace amgate {

using cplx = std::complex<double>;

/// Initial motional state of the centre-of-mass mode.
class MotionalState {
 public:
  enum class Kind { fock, thermal };

  static MotionalState ground() { return fock(0); }
  static MotionalState fock(int n);
  static MotionalState thermal(double nbar);

  Kind kind() const { return kind_; }
  int fock_level() const { return level_; }
  /// n for a Fock state, nbar for a thermal state.
  double mean_phonons() const { return kind_ == Kind::fock ? level_ : nbar_; }

  /// Occupation weights p_n. Thermal weights nbar^n/(nbar+1)^(n+1) are kept until the
  /// cumulative mass reaches 1 - mass_tol, then renormalized.
  std::vector<double> weights(double mass_tol = 1e-10) const;

 private:
  Kind kind_ = Kind::fock;
  int level_ = 0;
  double nbar_ = 0.0;
};

/// Eigendecomposition of the truncated position operator x = (a + a^dagger)/sqrt(2),
/// shared by all propagators with the same cutoff.
struct PositionEigenbasis {
  int cutoff = 0;
  std::vector<double> values;
  Matrix vectors;
};
std::shared_ptr<const PositionEigenbasis> position_eigenbasis(int cutoff);

/// U = exp(-i A Jy^2) exp(-i F Jy x) exp(-i G Jy p) on spin (x) Fock levels 0..cutoff,
/// with Jy = (sigma_y (x) 1 + 1 (x) sigma_y)/2 and p = i(a^dagger - a)/sqrt(2).
///
/// Each factor commutes with Jy, so the exponentials are applied in the Jy eigenbasis,
/// where they reduce to exp(-i m theta x) with x diagonalized once per cutoff
/// (exp(-i theta p) = D exp(-i theta x) D^dagger with D = diag(i^n)).
/// State layout: index = spin * (cutoff + 1) + n, spin order |gg>, |ge>, |eg>, |ee>.
class FockPropagator {
 public:
  FockPropagator(double F, double G, double A, int cutoff);

  int cutoff() const { return cutoff_; }
  std::size_t dimension() const { return 4 * levels(); }
  std::size_t levels() const { return static_cast<std::size_t>(cutoff_) + 1; }

  std::vector<cplx> apply(std::span<const cplx> state) const;
  /// Dense matrix, column-major: element (row, col) at [col * dim + row].
  std::vector<cplx> matrix() const;
  /// max |(U^dagger U - 1)_{ij}| over basis states with n <= cutoff/2.
  double unitarity_deviation() const;

 private:
  void apply_position(std::vector<cplx>& v, double theta) const;
  void apply_momentum(std::vector<cplx>& v, double theta) const;

  double F_, G_, A_;
  int cutoff_;
  std::shared_ptr<const PositionEigenbasis> basis_;
};

FockPropagator propagator_fock(double F, double G, double A, int cutoff);

/// The ideal output (|gg> + i|ee>)/sqrt(2).
std::array<cplx, 4> ideal_state();

}  // namespace amgate
