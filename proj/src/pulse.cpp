#include "amgate/pulse.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "amgate/errors.hpp"

namespace amgate {

namespace {

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw PreconditionError(std::string("non-finite ") + what);
}

}  // namespace

PhysicalParams::PhysicalParams(double eta, double xi0) : eta_(eta), xi0_(xi0) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw PreconditionError("eta must be a positive finite number");
  if (!(xi0 > 0.0) || !std::isfinite(xi0)) throw PreconditionError("xi0 must be a positive finite number");
}

FourierPulse::FourierPulse(int order) : order_(order) {
  if (order < 1) throw PreconditionError("pulse order N must be >= 1");
  a_.assign(order + 1, 0.0);
  b_.assign(order + 1, 0.0);
}

FourierPulse::FourierPulse(double a0, std::vector<double> a, std::vector<double> b)
    : FourierPulse(static_cast<int>(a.size())) {
  if (a.size() != b.size()) throw PreconditionError("pulse arrays a and b must have equal length");
  check_finite(a0, "a0");
  a_[0] = a0;
  for (int n = 1; n <= order_; ++n) {
    check_finite(a[n - 1], "a_n");
    check_finite(b[n - 1], "b_n");
    a_[n] = a[n - 1];
    b_[n] = b[n - 1];
  }
}

FourierPulse FourierPulse::ms_baseline() {
  FourierPulse p(1);
  p.set_a0(2.0);
  return p;
}

double FourierPulse::a(int n) const { return (n >= 0 && n <= order_) ? a_[n] : 0.0; }
double FourierPulse::b(int n) const { return (n >= 1 && n <= order_) ? b_[n] : 0.0; }

void FourierPulse::set_a(int n, double v) {
  if (n < 1 || n > order_) throw PreconditionError("a_n index out of range");
  check_finite(v, "a_n");
  a_[n] = v;
}

void FourierPulse::set_b(int n, double v) {
  if (n < 1 || n > order_) throw PreconditionError("b_n index out of range");
  check_finite(v, "b_n");
  b_[n] = v;
}

void FourierPulse::require_closed() const {
  if (a_[1] != 0.0) throw PreconditionError("pulse not closed: a1 = " + std::to_string(a_[1]) + " (must be 0)");
  if (b_[1] != 0.0) throw PreconditionError("pulse not closed: b1 = " + std::to_string(b_[1]) + " (must be 0)");
}

bool FourierPulse::has_sine_terms() const {
  for (int n = 1; n <= order_; ++n)
    if (b_[n] != 0.0) return true;
  return false;
}

FourierPulse FourierPulse::scaled(double s) const {
  FourierPulse out = *this;
  for (auto& v : out.a_) v *= s;
  for (auto& v : out.b_) v *= s;
  return out;
}

double eval_envelope(const FourierPulse& pulse, const PhysicalParams& params, double t) {
  const double phase = params.xi0() * t;
  double sum = 0.5 * pulse.a0();
  for (int n = 1; n <= pulse.order(); ++n) {
    const double x = n * phase;
    sum += pulse.a(n) * std::cos(x) + pulse.b(n) * std::sin(x);
  }
  return sum;
}

double envelope_derivative_at_T(const FourierPulse& pulse, const PhysicalParams& params, int k) {
  if (k < 0) throw PreconditionError("derivative order must be non-negative");
  double sum = 0.0;
  if (k % 2 == 0) {
    for (int n = 1; n <= pulse.order(); ++n) sum += pulse.a(n) * std::pow(n * params.xi0(), k);
    sum *= (k / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k == 0) sum += 0.5 * pulse.a0();
  } else {
    for (int n = 1; n <= pulse.order(); ++n) sum += pulse.b(n) * std::pow(n * params.xi0(), k);
    sum *= ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  }
  return sum;
}

double normalized_power(const FourierPulse& pulse) {
  double sum = 0.0;
  for (int n = 1; n <= pulse.order(); ++n) sum += pulse.a(n) * pulse.a(n) + pulse.b(n) * pulse.b(n);
  return 0.25 * pulse.a0() * pulse.a0() + 0.5 * sum;
}

double normalized_phase(const FourierPulse& pulse) {
  if (pulse.a(1) != 0.0 || pulse.b(1) != 0.0)
    throw PreconditionError("normalized phase undefined for nonzero a1/b1 (n^2-1 vanishes at n=1)");
  double sum = 0.0;
  for (int n = 2; n <= pulse.order(); ++n)
    sum += (pulse.a(n) * pulse.a(n) + pulse.b(n) * pulse.b(n)) / (static_cast<double>(n) * n - 1.0);
  return -0.25 * pulse.a0() * pulse.a0() + 0.5 * sum;
}

double target_phase_scale(const FourierPulse& pulse, const PhysicalParams& params) {
  const double phase = normalized_phase(pulse);
  if (phase == 0.0) throw PreconditionError("phase-degenerate pulse cannot be rescaled");
  return std::sqrt((std::numbers::pi / 2.0) / (params.phase_scale() * std::abs(phase)));
}

FourierPulse rescale_to_target_phase(const FourierPulse& pulse, const PhysicalParams& params) {
  return pulse.scaled(target_phase_scale(pulse, params));
}

nlohmann::json pulse_to_json(const FourierPulse& pulse) {
  std::vector<double> a(pulse.order()), b(pulse.order());
  for (int n = 1; n <= pulse.order(); ++n) {
    a[n - 1] = pulse.a(n);
    b[n - 1] = pulse.b(n);
  }
  return {{"N", pulse.order()}, {"a0", pulse.a0()}, {"a", a}, {"b", b}};
}

FourierPulse pulse_from_json(const nlohmann::json& j) {
  try {
    const int order = j.at("N").get<int>();
    auto a = j.at("a").get<std::vector<double>>();
    auto b = j.at("b").get<std::vector<double>>();
    if (static_cast<int>(a.size()) != order || static_cast<int>(b.size()) != order)
      throw PreconditionError("pulse JSON: arrays a and b must have exactly N entries");
    return FourierPulse(j.at("a0").get<double>(), std::move(a), std::move(b));
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("pulse JSON: ") + e.what());
  }
}

FourierPulse load_pulse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open pulse file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError("pulse file " + path + ": " + e.what());
  }
  // Optimization results embed the pulse under "pulse".
  if (j.contains("pulse")) return pulse_from_json(j.at("pulse"));
  return pulse_from_json(j);
}

void save_pulse(const FourierPulse& pulse, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write pulse file " + path);
  out << pulse_to_json(pulse).dump(2) << '\n';
}

}  // namespace amgate
