#include "amgate/properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "amgate/constraints.hpp"
#include "amgate/errors.hpp"
#include "amgate/optimizer.hpp"
#include "amgate/oracles.hpp"
#include "amgate/parallel.hpp"
#include "amgate/trajectory.hpp"

namespace amgate::props {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Collects an error metric and the first failure message.
struct Tally {
  PropertyResult r;
  std::string failure;

  Tally(std::string name, double tolerance) {
    r.name = std::move(name);
    r.tolerance = tolerance;
  }
  void observe(double err, const std::string& what) {
    ++r.cases;
    if (!(err <= r.worst)) {
      r.worst = err;
      if (failure.empty()) r.detail = "worst: " + what;
    }
    if (!(err < r.tolerance) && failure.empty()) failure = what;
  }
  void fail(const std::string& what) {
    ++r.cases;
    if (failure.empty()) failure = what;
  }
  PropertyResult done(const std::string& summary = {}) {
    r.passed = failure.empty();
    if (!r.passed)
      r.detail = "failed: " + failure;
    else if (!summary.empty())
      r.detail = summary;
    return r;
  }
};

double natural_scale(const FourierPulse& pulse, const PhysicalParams& params, int i) {
  double s = std::abs(pulse.a0()) / 2.0;
  for (int n = 1; n <= pulse.order(); ++n) s += std::abs(pulse.a(n)) + std::abs(pulse.b(n));
  return std::numbers::sqrt2 * params.eta() * s * std::pow((pulse.order() + 1) * params.xi0(), i - 1);
}

// Pulse from a null-space vector over (a0, a2..aN[, b2..bN]).
FourierPulse pulse_from_system_vector(const ConstraintSystem& sys, std::span<const double> v) {
  FourierPulse p(sys.order);
  p.set_a0(v[0]);
  for (int n = 2; n <= sys.order; ++n) p.set_a(n, v[n - 1]);
  if (sys.include_b)
    for (int n = 2; n <= sys.order; ++n) p.set_b(n, v[sys.order + n - 2]);
  return p;
}

double ratio_of(const ReducedProblem& problem) { return std::abs(solve_rayleigh(problem).eigenvalue); }

}  // namespace

PropertyResult oracle_equivalence(const SuiteConfig& cfg, int count) {
  struct Tuple {
    double F, G, A, nbar;
  };
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> disp(-0.5, 0.5);
  std::uniform_real_distribution<double> phase(0.0, std::numbers::pi);
  const double nbars[] = {0.0, 0.5, 2.0};
  std::vector<Tuple> tuples(count);
  for (int k = 0; k < count; ++k) {
    const double F = disp(rng);
    const double G = disp(rng);
    tuples[k] = {F, G, phase(rng), nbars[k % 3]};
  }

  struct Outcome {
    double err = 0.0, trace = 0.0, min_eig = 0.0, edge = 0.0;
    int cutoff = 0;
    std::string error;
  };
  std::vector<Outcome> outcomes(count);
  parallel_for(tuples.size(), cfg.threads, [&](std::size_t k) {
    const auto& t = tuples[k];
    const auto motional = t.nbar == 0.0 ? MotionalState::ground() : MotionalState::thermal(t.nbar);
    try {
      const auto out = reduced_spin_state(t.F, t.G, t.A, motional, cfg.cutoff);
      double trace = 0.0;
      for (int a = 0; a < 4; ++a) trace += out.rho_at(a, a).real();
      outcomes[k] = {std::abs(out.fidelity - fidelity_analytic(t.F, t.G, t.A, t.nbar)), std::abs(trace - 1.0),
                     oracle::min_eigenvalue_hermitian4(out.rho), out.edge_population, out.cutoff, {}};
    } catch (const std::exception& e) {
      outcomes[k].error = e.what();
    }
  });

  Tally tally("oracle-equivalence", 1e-8);
  for (int k = 0; k < count; ++k) {
    const auto& t = tuples[k];
    const auto& o = outcomes[k];
    const std::string where = "(F=" + fmt(t.F) + ", G=" + fmt(t.G) + ", A=" + fmt(t.A) + ", nbar=" + fmt(t.nbar) + ")";
    if (!o.error.empty()) {
      tally.fail(where + ": " + o.error);
      continue;
    }
    tally.observe(o.err, where + " |fidelity difference| = " + fmt(o.err) + " at cutoff " +
                             std::to_string(o.cutoff) + ", edge population " + fmt(o.edge));
    if (o.trace > 1e-10) tally.fail(where + ": trace deviates by " + fmt(o.trace));
    if (o.min_eig < -1e-10) tally.fail(where + ": negative eigenvalue " + fmt(o.min_eig));
  }
  for (int k = 0; k < std::min(count, 3); ++k) {
    const int cutoff = outcomes[k].cutoff;
    if (cutoff < 10) continue;
    const double dev = FockPropagator(tuples[k].F, tuples[k].G, tuples[k].A, cutoff).unitarity_deviation();
    if (dev > 1e-10) tally.fail("propagator unitarity deviation " + fmt(dev) + " at cutoff " + std::to_string(cutoff));
  }
  return tally.done();
}

PropertyResult closed_form_vs_quadrature(const SuiteConfig& cfg, int count, int max_order) {
  const auto& params = cfg.params;
  const double T = params.gate_time();
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_real_distribution<double> when(0.0, 1.2 * T);
  std::vector<FourierPulse> pulses;
  std::vector<std::vector<double>> times(count);
  for (int k = 0; k < count; ++k) {
    pulses.push_back(oracle::random_pulse(1 + k % max_order, rng, false));
    for (int j = 1; j <= 8; ++j) times[k].push_back(T * j / 8.0);
    times[k].push_back(when(rng));
  }
  std::vector<std::pair<double, std::string>> worst(count);
  parallel_for(pulses.size(), cfg.threads, [&](std::size_t k) {
    for (double t : times[k]) {
      const double fq = oracle::quadrature_F(pulses[k], params, t);
      const double gq = oracle::quadrature_G(pulses[k], params, t);
      const double ef = std::abs(closed_form_F(pulses[k], params, t) - fq) / (1.0 + std::abs(fq));
      const double eg = std::abs(closed_form_G(pulses[k], params, t) - gq) / (1.0 + std::abs(gq));
      const double e = std::max(ef, eg);
      if (e >= worst[k].first)
        worst[k] = {e, "pulse " + std::to_string(k) + " (N=" + std::to_string(pulses[k].order()) + ") at t/T=" +
                           fmt(t / T) + ": " + (ef >= eg ? "F" : "G") + " error " + fmt(e)};
    }
  });
  Tally tally("closed-form-vs-quadrature", 1e-10);
  for (const auto& [e, what] : worst) tally.observe(e, what);
  return tally.done();
}

PropertyResult derivative_formulas(const SuiteConfig& cfg, int count, int max_derivative) {
  const auto& params = cfg.params;
  std::mt19937_64 rng(cfg.seed + 2);
  std::vector<FourierPulse> pulses;
  for (int k = 0; k < count; ++k) pulses.push_back(oracle::random_pulse(2 + k % 11, rng));
  std::vector<std::pair<double, std::string>> worst(count);
  parallel_for(pulses.size(), cfg.threads, [&](std::size_t k) {
    const auto& p = pulses[k];
    for (int i = 1; i <= max_derivative; ++i) {
      const double floor = 1e-3 * natural_scale(p, params, i);
      const double ef = derivative_F_at_T(p, params, i);
      const double eg = derivative_G_at_T(p, params, i);
      const double rf = std::abs(oracle::fd_derivative_F(p, params, i) - ef) / std::max(std::abs(ef), floor);
      const double rg = std::abs(oracle::fd_derivative_G(p, params, i) - eg) / std::max(std::abs(eg), floor);
      const double e = std::max(rf, rg);
      if (e >= worst[k].first)
        worst[k] = {e, "pulse " + std::to_string(k) + " (N=" + std::to_string(p.order()) + "): " +
                           (rf >= rg ? "F^(" : "G^(") + std::to_string(i) + ") relative error " + fmt(e)};
    }
  });
  Tally tally("derivative-formulas", 1e-4);
  for (const auto& [e, what] : worst) tally.observe(e, what);
  return tally.done();
}

PropertyResult constraint_order(const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 3);
  Tally tally("constraint-order", 1.0);
  for (bool with_b : {false, true})
    for (int l = 1; l <= 3; ++l)
      for (int order : {l + 1, l + 2, 2 * l + 3, 10, 20}) {
        const auto sys = build_constraint_matrix(l, order, with_b);
        const auto z = nullspace_basis(sys);
        for (int s = 0; s < 3; ++s) {
          const auto v = oracle::sample_nullspace(z, rng);
          // Free b-coefficients leave F^(2l) unconstrained; with b = 0 the order reaches 2l.
          const int k = with_b ? 2 * l - 1 : 2 * l;
          const auto report = verify_order(pulse_from_system_vector(sys, v), cfg.params, k);
          tally.observe(report.max_residual / report.tolerance,
                        "l=" + std::to_string(l) + ", N=" + std::to_string(order) + (with_b ? " with b-rows" : "") +
                            ", k=" + std::to_string(k) + ": " + report.worst + " residual " + fmt(report.max_residual) + " (tolerance " +
                            fmt(report.tolerance) + ")");
        }
      }
  return tally.done();
}

PropertyResult redundancy(const SuiteConfig& cfg, int count) {
  std::mt19937_64 rng(cfg.seed + 4);
  Tally tally("redundancy", 1.0);
  auto check = [&](const FourierPulse& p, const std::string& label) {
    const auto report = verify_redundancy(p, cfg.params);
    if (!report.precondition_met) {
      tally.fail(label + ": " + report.message);
      return;
    }
    tally.observe(std::abs(report.g4) / report.tolerance, label + ": |G^(4)(T)| = " + fmt(std::abs(report.g4)));
  };
  check(FourierPulse(6.0, {0.0, -27.0 / 5.0, 12.0 / 5.0}, {0.0, 0.0, 0.0}), "hand-solved N=3 pulse");
  check(FourierPulse(3), "zero pulse");
  for (int k = 0; k < count; ++k) {
    const int order = 3 + k % 10;
    const auto sys = build_constraint_matrix(2, order);
    const auto v = oracle::sample_nullspace(nullspace_basis(sys), rng);
    check(pulse_from_system_vector(sys, v), "random sample N=" + std::to_string(order));
  }
  return tally.done();
}

PropertyResult redundancy_trend(const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 5);
  Tally tally("redundancy-trend", 1e-11);
  for (bool with_b : {false, true})
    for (int l = 1; l <= 5; ++l) {
      if (with_b && l == 1) continue;
      for (int order : {l + 1, l + 4, 12}) {
        const auto sys = build_constraint_matrix(l, order, with_b);
        const auto z = nullspace_basis(sys);
        for (int s = 0; s < 3; ++s) {
          const auto p = pulse_from_system_vector(sys, oracle::sample_nullspace(z, rng));
          // a-rows make the even G conditions redundant; b-rows do the same for the odd ones.
          for (int i = with_b ? 1 : 2; i <= 2 * l; i += with_b ? 1 : 2) {
            const double rel = std::abs(derivative_G_at_T(p, cfg.params, i)) / natural_scale(p, cfg.params, i);
            tally.observe(rel, "l=" + std::to_string(l) + ", N=" + std::to_string(order) +
                                   (with_b ? " with b-rows" : "") + ": G^(" + std::to_string(i) +
                                   ")(T) relative " + fmt(rel));
          }
        }
      }
    }
  return tally.done();
}

PropertyResult phase_power_bound(const SuiteConfig& cfg, int count) {
  std::mt19937_64 rng(cfg.seed + 6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tally tally("phase-power-bound", 1e-12);
  const auto ms = FourierPulse::ms_baseline();
  if (normalized_phase(ms) != -1.0 || normalized_power(ms) != 1.0)
    tally.fail("constant pulse: A = " + fmt(normalized_phase(ms)) + ", P = " + fmt(normalized_power(ms)));
  double b_ratio = 0.0, general_ratio = 0.0;
  for (int k = 0; k < count; ++k) {
    FourierPulse p(2 + k % 11);
    for (int n = 2; n <= p.order(); ++n) p.set_b(n, u(rng));
    const double excess = normalized_phase(p) - normalized_power(p) / 3.0;
    b_ratio = std::max(b_ratio, normalized_phase(p) / normalized_power(p));
    tally.observe(excess, "b-only pulse " + std::to_string(k) + ": A - P/3 = " + fmt(excess));
  }
  for (int k = 0; k < count; ++k) {
    const auto p = oracle::random_pulse(2 + k % 11, rng);
    const double excess = std::abs(normalized_phase(p)) / normalized_power(p) - 1.0;
    general_ratio = std::max(general_ratio, std::abs(normalized_phase(p)) / normalized_power(p));
    tally.observe(excess, "general pulse " + std::to_string(k) + ": |A|/P - 1 = " + fmt(excess));
  }
  return tally.done("constant pulse A = -1, P = 1; max A/P over b-only pulses " + fmt(b_ratio) +
                    " (bound 1/3); max |A|/P over general pulses " + fmt(general_ratio));
}

PropertyResult basis_invariance(const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 7);
  std::normal_distribution<double> normal;
  Tally tally("basis-invariance", 1e-10);
  for (int l = 1; l <= 2; ++l)
    for (int order : {3, 5, 8, 12, 20}) {
      const auto sys = build_constraint_matrix(l, order);
      const auto forms = build_forms(order);
      const auto z = nullspace_basis(sys);
      const double reference = ratio_of(reduce(forms, z, l));

      Matrix g(z.cols(), z.cols());
      for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = normal(rng);
      const Matrix rotated = z * householder_qr(g).q;

      const std::pair<std::string, double> variants[] = {
          {"rotated orthonormal basis", ratio_of(reduce(forms, rotated, l))},
          {"elimination basis", ratio_of(reduce(forms, oracle::elimination_basis(sys.matrix), l))},
          {"explicit reduced matrices", ratio_of(l == 1 ? explicit_reduced_1lc(order) : explicit_reduced_2lc(order))},
      };
      for (const auto& [label, value] : variants) {
        const double d = std::abs(value - reference);
        tally.observe(d, "l=" + std::to_string(l) + ", N=" + std::to_string(order) + ", " + label +
                             ": ratio differs by " + fmt(d));
      }
    }
  return tally.done();
}

PropertyResult brute_force_optimality(const SuiteConfig& cfg, int samples) {
  Tally tally("brute-force-optimality", 1e-6);
  for (int order = 2; order <= 6; ++order)
    for (int l = 1; l <= std::min(2, order - 1); ++l) {
      const auto eig = optimize_pulse(order, l, cfg.params);
      const auto bf = oracle::brute_force_ratio(order, l, cfg.seed + 100 * order + l, samples);
      const double d = std::abs(bf.ratio - eig.ratio);
      tally.observe(d, "N=" + std::to_string(order) + ", l=" + std::to_string(l) + ": eigen " + fmt(eig.ratio) +
                           " vs search " + fmt(bf.ratio));
    }
  return tally.done();
}

PropertyResult small_cases(const SuiteConfig& cfg) {
  Tally tally("small-cases", 1e-12);
  auto expect = [&](const std::string& label, double value, double exact) {
    tally.observe(std::abs(value - exact), label + " = " + fmt(value) + ", expected " + fmt(exact));
  };
  expect("ratio (N=2, l=1)", optimize_pulse(2, 1, cfg.params).ratio, 5.0 / 9.0);
  expect("ratio (N=3, l=2)", optimize_pulse(3, 2, cfg.params).ratio, 1.0 / 7.0);
  const auto e1 = explicit_reduced_1lc(2);
  expect("explicit P' (N=2, l=1)", e1.power(0, 0), 1.5);
  expect("explicit A' (N=2, l=1)", e1.phase(0, 0), -5.0 / 6.0);
  const auto e2 = explicit_reduced_2lc(3);
  expect("explicit P' (N=3, l=2)", e2.power(0, 0), 147.0 / 32.0);
  expect("explicit A' (N=3, l=2)", e2.phase(0, 0), -21.0 / 32.0);
  return tally.done();
}

PropertyResult power_trends(const SuiteConfig& cfg, int max_order) {
  struct Row {
    int order, l;
    double overhead;
  };
  std::vector<Row> rows;
  for (int l = 1; l <= 2; ++l)
    for (int order = l + 1; order <= max_order; ++order) rows.push_back({order, l, 0.0});
  parallel_for(rows.size(), cfg.threads, [&](std::size_t k) {
    rows[k].overhead = optimize_pulse(rows[k].order, rows[k].l, cfg.params).overhead_percent();
  });
  auto overhead = [&](int order, int l) {
    for (const auto& r : rows)
      if (r.order == order && r.l == l) return r.overhead;
    return std::numeric_limits<double>::quiet_NaN();
  };

  Tally tally("power-trends", 1.0);
  for (const auto& r : rows) {
    const std::string at = "l=" + std::to_string(r.l) + ", N=" + std::to_string(r.order);
    if (!(r.overhead > 0.0)) tally.fail(at + ": overhead " + fmt(r.overhead) + "% is not positive");
    if (r.order > r.l + 1 && r.overhead > overhead(r.order - 1, r.l) + 1e-10)
      tally.fail(at + ": overhead increases from N-1");
    if (r.l == 2 && !(r.overhead > overhead(r.order, 1)))
      tally.fail(at + ": 2 LC overhead not above 1 LC (" + fmt(r.overhead) + "% vs " + fmt(overhead(r.order, 1)) + "%)");
  }
  std::string summary;
  if (max_order >= 100) {
    const double o1 = overhead(100, 1);
    const double o2 = overhead(100, 2);
    tally.observe(std::abs(o1 - 0.51) / 0.05, "N=100, l=1 overhead " + fmt(o1) + "% (0.51 +- 0.05)");
    tally.observe(std::abs(o2 - 1.2) / 0.1, "N=100, l=2 overhead " + fmt(o2) + "% (1.2 +- 0.1)");
    summary = "N=100 overheads " + fmt(o1) + "% (l=1), " + fmt(o2) + "% (l=2)";
  }
  return tally.done(summary);
}

PropertyResult slope_hierarchy(const SuiteConfig& cfg) {
  const auto& params = cfg.params;
  const auto grid = default_dt_grid();
  Tally tally("slope-hierarchy", 1.0);
  std::ostringstream summary;
  auto fit = [&](const FourierPulse& pulse) {
    const auto curve = scan_infidelity(pulse, params, 0.0, grid, cfg.threads);
    return fit_loglog_slope(curve, 1e-3, 1e-2);
  };
  const double ms = fit(rescale_to_target_phase(FourierPulse::ms_baseline(), params)).slope;
  tally.observe(std::abs(ms - 2.0) / 0.05, "MS slope " + fmt(ms) + " (2 +- 0.05)");
  summary << "MS " << fmt(ms);
  for (int l = 1; l <= 2; ++l) {
    const double target = l == 1 ? 6.0 : 10.0;
    const double tol = l == 1 ? 0.2 : 0.3;
    for (int order : {5, 10, 20}) {
      const double s = fit(optimize_pulse(order, l, params).pulse).slope;
      const std::string at = std::to_string(l) + " LC N=" + std::to_string(order);
      tally.observe(std::abs(s - target) / tol, at + " slope " + fmt(s) + " (" + fmt(target) + " +- " + fmt(tol) + ")");
      if (!(s > (l == 1 ? ms : 6.0 + 0.2))) tally.fail(at + ": slope not above the lower hierarchy level");
      summary << ", " << at << ' ' << fmt(s);
    }
  }
  return tally.done(summary.str());
}

PropertyResult stability_widths(const SuiteConfig& cfg) {
  const auto& params = cfg.params;
  const auto grid = default_dt_grid();
  const double threshold = calibrate_stability_threshold(params);
  Tally tally("stability-widths", 1.0);
  std::ostringstream summary;
  summary << "threshold " << fmt(threshold);
  auto width = [&](const FourierPulse& pulse) {
    return stability_region(scan_infidelity(pulse, params, 0.0, grid, cfg.threads), threshold).half_width;
  };
  const double ms = width(rescale_to_target_phase(FourierPulse::ms_baseline(), params));
  summary << ", MS " << fmt(ms);
  const int orders[] = {5, 10, 20};
  const double quoted[2][3] = {{0.04, 0.03, 0.015}, {0.07, 0.05, 0.03}};
  double w[2][3];
  for (int l = 1; l <= 2; ++l)
    for (int j = 0; j < 3; ++j) {
      w[l - 1][j] = width(optimize_pulse(orders[j], l, params).pulse);
      const double q = quoted[l - 1][j];
      const std::string at = std::to_string(l) + " LC N=" + std::to_string(orders[j]);
      tally.observe(std::abs(w[l - 1][j] - q) / (0.5 * q),
                    at + " half-width " + fmt(w[l - 1][j]) + " (quoted " + fmt(q) + " +- 50%)");
      summary << ", " << at << ' ' << fmt(w[l - 1][j]);
    }
  for (int j = 0; j < 3; ++j) {
    if (!(w[1][j] > w[0][j])) tally.fail("N=" + std::to_string(orders[j]) + ": 2 LC width not above 1 LC");
    if (j > 0)
      for (int l = 0; l < 2; ++l)
        if (!(w[l][j] < w[l][j - 1])) tally.fail(std::to_string(l + 1) + " LC: width does not decrease with N");
  }
  if (!(ms < w[0][2])) tally.fail("MS width " + fmt(ms) + " not below every AM width");
  return tally.done(summary.str());
}

PropertyResult population_flatness(const SuiteConfig& cfg) {
  const auto& params = cfg.params;
  const double T = params.gate_time();
  std::vector<double> grid;
  for (int k = -40; k <= 40; ++k) grid.push_back(T * (1.0 + 0.0025 * k));
  const auto ms = rescale_to_target_phase(FourierPulse::ms_baseline(), params);
  const auto am = optimize_pulse(5, 1, params).pulse;
  const auto thermal = MotionalState::thermal(2.0);

  Tally tally("population-flatness", 1e-9);
  const std::array<double, 2> ends = {0.0, T};
  for (const auto* pulse : {&ms, &am}) {
    const auto pts = populations_vs_time(*pulse, params, MotionalState::ground(), ends, cfg.cutoff, cfg.threads);
    const std::string label = pulse == &ms ? "MS" : "AM N=5";
    tally.observe(std::max(std::abs(pts[0].p_gg - 1.0), std::abs(pts[0].p_ee)), label + ": populations at t=0");
    tally.observe(std::max(std::abs(pts[1].p_gg - 0.5), std::abs(pts[1].p_ee - 0.5)), label + ": populations at t=T");
  }
  const double s_ms =
      population_steepness(populations_vs_time(ms, params, thermal, grid, cfg.cutoff, cfg.threads), T);
  const double s_am =
      population_steepness(populations_vs_time(am, params, thermal, grid, cfg.cutoff, cfg.threads), T);
  if (!(s_ms > s_am)) tally.fail("MS steepness " + fmt(s_ms) + " not above AM N=5 steepness " + fmt(s_am));
  return tally.done("max |dP_gg/d(t/T)| near T at nbar=2: MS " + fmt(s_ms) + ", AM N=5 " + fmt(s_am));
}

PropertyResult closure(const FourierPulse& pulse, const PhysicalParams& params) {
  Tally tally("closure", 1e-12);
  if (!pulse.is_closed()) {
    tally.fail("a1 = " + fmt(pulse.a(1)) + ", b1 = " + fmt(pulse.b(1)) + " must vanish for the trajectory to close");
    return tally.done();
  }
  const double T = params.gate_time();
  const double scale = natural_scale(pulse, params, 0);
  const double f = std::abs(closed_form_F(pulse, params, T));
  const double g = std::abs(closed_form_G(pulse, params, T));
  tally.observe(std::max(f, g) / std::max(scale, std::numeric_limits<double>::min()),
                "|F(T)| = " + fmt(f) + ", |G(T)| = " + fmt(g));
  return tally.done();
}

std::vector<PropertyResult> run_all(const SuiteConfig& cfg) {
  return {oracle_equivalence(cfg),  closed_form_vs_quadrature(cfg), derivative_formulas(cfg),
          constraint_order(cfg),    redundancy(cfg),                redundancy_trend(cfg),
          phase_power_bound(cfg),   basis_invariance(cfg),          brute_force_optimality(cfg),
          small_cases(cfg),         power_trends(cfg),              slope_hierarchy(cfg),
          stability_widths(cfg),    population_flatness(cfg)};
}

std::string format_result(const PropertyResult& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS " : "FAIL ") << r.name << "  cases=" << r.cases << " worst=" << fmt(r.worst)
      << " tol=" << fmt(r.tolerance);
  if (!r.detail.empty()) out << "  " << r.detail;
  return out.str();
}

}  // namespace amgate::props
