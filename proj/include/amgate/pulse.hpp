#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"

namespace amgate {

/// Lamb-Dicke parameter and sideband detuning. The gate time follows as T = 2*pi/xi0.
///
/// Envelope coefficients are expressed in the same angular-frequency units as xi0,
/// so the defaults (xi0 = 1) correspond to natural units.
class PhysicalParams {
 public:
  PhysicalParams(double eta, double xi0);

  double eta() const { return eta_; }
  double xi0() const { return xi0_; }
  double gate_time() const { return 2.0 * std::numbers::pi / xi0_; }
  /// T*eta^2/xi0: converts the normalized phase of a closed pulse into A(T).
  double phase_scale() const { return gate_time() * eta_ * eta_ / xi0_; }

 private:
  double eta_;
  double xi0_;
};

/// Truncated Fourier envelope
///   Omega(t) = a0/2 + sum_{n=1..N} a_n cos(n xi0 t) + b_n sin(n xi0 t).
/// Coefficients are stored densely; absent ones are exact zeros.
class FourierPulse {
 public:
  explicit FourierPulse(int order);
  /// a and b hold the coefficients for n = 1..N at index n-1.
  FourierPulse(double a0, std::vector<double> a, std::vector<double> b);

  /// The constant Molmer-Sorensen envelope, a0 = 2.
  static FourierPulse ms_baseline();

  int order() const { return order_; }
  double a0() const { return a_[0]; }
  double a(int n) const;
  double b(int n) const;
  void set_a0(double v) { a_[0] = v; }
  void set_a(int n, double v);
  void set_b(int n, double v);

  /// a1 = b1 = 0 exactly; the trajectory only closes at T for such pulses.
  bool is_closed() const { return a_[1] == 0.0 && b_[1] == 0.0; }
  /// Throws PreconditionError naming the offending coefficient.
  void require_closed() const;
  bool has_sine_terms() const;

  FourierPulse scaled(double s) const;

  friend bool operator==(const FourierPulse&, const FourierPulse&) = default;

 private:
  int order_;
  std::vector<double> a_;  // a_[0] = a0, a_[n] = a_n
  std::vector<double> b_;  // b_[0] unused (always 0), b_[n] = b_n
};

double eval_envelope(const FourierPulse& pulse, const PhysicalParams& params, double t);

/// k-th time derivative of Omega at the gate time.
double envelope_derivative_at_T(const FourierPulse& pulse, const PhysicalParams& params, int k);

/// Average of Omega^2 over one gate period: a0^2/4 + (1/2) sum (a_n^2 + b_n^2).
double normalized_power(const FourierPulse& pulse);

/// xi0/(T eta^2) * A(T) for a closed pulse: -a0^2/4 + (1/2) sum_{n>=2} (a_n^2 + b_n^2)/(n^2 - 1).
/// Throws PreconditionError when a1 or b1 is nonzero.
double normalized_phase(const FourierPulse& pulse);

/// Factor s such that s*pulse reaches |A(T)| = pi/2.
double target_phase_scale(const FourierPulse& pulse, const PhysicalParams& params);
FourierPulse rescale_to_target_phase(const FourierPulse& pulse, const PhysicalParams& params);

// {"N": int, "a0": float, "a": [float; N], "b": [float; N]}, index i <-> n = i+1.
nlohmann::json pulse_to_json(const FourierPulse& pulse);
FourierPulse pulse_from_json(const nlohmann::json& j);
FourierPulse load_pulse(const std::string& path);
void save_pulse(const FourierPulse& pulse, const std::string& path);

}  // namespace amgate
