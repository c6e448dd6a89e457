#include "amgate/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "amgate/errors.hpp"
#include "amgate/gate_sim.hpp"
#include "amgate/optimizer.hpp"
#include "amgate/parallel.hpp"
#include "amgate/properties.hpp"
#include "amgate/svg.hpp"
#include "amgate/trajectory.hpp"
#include "json.hpp"

namespace amgate::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int threads = std::max(1u, std::thread::hardware_concurrency());
  double eta = 0.1;
  double xi0 = 1.0;

  int N = 0;
  int l = 1;
  bool ms = false;
  std::string pulse_file;

  std::string n_list = "5:100";
  std::string l_list = "1,2";

  double nbar = 0.0;
  double dt_min = 1e-4;
  double dt_max = 0.2;
  int dt_points = 81;
  double fit_lo = 1e-3;
  double fit_hi = 1e-2;
  double threshold = kDefaultStabilityThreshold;

  int points = 0;  // 0: command default
  double stop = 1.0;
  int cutoff = 0;
  bool svg = false;
  std::string only;
};

const char* const kCommands[] = {"optimize", "power-table", "scan", "populations", "envelope", "trajectory", "verify"};

std::string fmt(double v, int digits = 6) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Re-throws failures of one pipeline step with the step name in front, keeping the error kind.
template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PreconditionError& e) {
    throw PreconditionError(name + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(name + ": " + e.what());
  }
}

void apply_config(const json& j, Options& o) {
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  static const std::map<std::string, std::function<void(const json&, Options&)>> setters = {
      {"out", [](const json& v, Options& o) { o.out_dir = v.get<std::string>(); }},
      {"seed", [](const json& v, Options& o) { o.seed = v.get<std::uint64_t>(); }},
      {"threads", [](const json& v, Options& o) { o.threads = v.get<int>(); }},
      {"eta", [](const json& v, Options& o) { o.eta = v.get<double>(); }},
      {"xi0", [](const json& v, Options& o) { o.xi0 = v.get<double>(); }},
      {"N", [](const json& v, Options& o) { o.N = v.get<int>(); }},
      {"l", [](const json& v, Options& o) { o.l = v.get<int>(); }},
      {"ms", [](const json& v, Options& o) { o.ms = v.get<bool>(); }},
      {"pulse", [](const json& v, Options& o) { o.pulse_file = v.get<std::string>(); }},
      {"N_list", [](const json& v, Options& o) { o.n_list = v.get<std::string>(); }},
      {"l_list", [](const json& v, Options& o) { o.l_list = v.get<std::string>(); }},
      {"nbar", [](const json& v, Options& o) { o.nbar = v.get<double>(); }},
      {"dt_min", [](const json& v, Options& o) { o.dt_min = v.get<double>(); }},
      {"dt_max", [](const json& v, Options& o) { o.dt_max = v.get<double>(); }},
      {"dt_points", [](const json& v, Options& o) { o.dt_points = v.get<int>(); }},
      {"fit_lo", [](const json& v, Options& o) { o.fit_lo = v.get<double>(); }},
      {"fit_hi", [](const json& v, Options& o) { o.fit_hi = v.get<double>(); }},
      {"threshold", [](const json& v, Options& o) { o.threshold = v.get<double>(); }},
      {"points", [](const json& v, Options& o) { o.points = v.get<int>(); }},
      {"stop", [](const json& v, Options& o) { o.stop = v.get<double>(); }},
      {"cutoff", [](const json& v, Options& o) { o.cutoff = v.get<int>(); }},
      {"svg", [](const json& v, Options& o) { o.svg = v.get<bool>(); }},
      {"only", [](const json& v, Options& o) { o.only = v.get<std::string>(); }},
  };
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kCommands), std::end(kCommands), key) != std::end(kCommands)) continue;
    const auto it = setters.find(key);
    if (it == setters.end()) throw PreconditionError("unknown config key \"" + key + "\"");
    try {
      it->second(value, o);
    } catch (const json::exception&) {
      throw PreconditionError("config key \"" + key + "\" has the wrong type");
    }
  }
}

// Loads --config before flag parsing so that flags override file values.
void preload_config(int argc, const char* const* argv, Options& o) {
  std::string path;
  std::string command;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) path = argv[++i];
    else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
    else if (command.empty() && std::find(std::begin(kCommands), std::end(kCommands), arg) != std::end(kCommands))
      command = arg;
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw PreconditionError("config file " + path + " is not valid JSON: " + e.what());
  }
  apply_config(j, o);
  if (!command.empty() && j.contains(command)) apply_config(j.at(command), o);
}

void validate_common(const Options& o) {
  if (o.threads < 1) throw PreconditionError("--threads must be >= 1");
  if (!(o.eta > 0.0)) throw PreconditionError("--eta must be positive");
  if (!(o.xi0 > 0.0)) throw PreconditionError("--xi0 must be positive");
  if (!(o.nbar >= 0.0)) throw PreconditionError("--nbar must be non-negative");
}

fs::path output_path(const Options& o, const std::string& name) {
  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw PreconditionError("output directory " + dir.string() + " cannot be created");
  return dir / name;
}

void write_file(const Options& o, const std::string& name, const std::string& content, std::ostream& out) {
  const auto path = output_path(o, name);
  std::ofstream f(path, std::ios::binary);
  f << content;
  f.close();
  if (!f) throw PreconditionError("cannot write " + path.string());
  out << "wrote " << path.string() << '\n';
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw PreconditionError("cannot parse " + what + " entry \"" + s + "\"");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream range(item);
    std::string p;
    while (std::getline(range, p, ':')) parts.push_back(p);
    if (parts.size() == 1) {
      values.push_back(to_int(parts[0]));
    } else if (parts.size() == 2 || parts.size() == 3) {
      const int lo = to_int(parts[0]), hi = to_int(parts[1]);
      const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
      if (step < 1 || hi < lo) throw PreconditionError("bad range \"" + item + "\" in " + what);
      for (int v = lo; v <= hi; v += step) values.push_back(v);
    } else {
      throw PreconditionError("bad range \"" + item + "\" in " + what);
    }
  }
  if (values.empty()) throw PreconditionError(what + " is empty");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

struct Source {
  FourierPulse pulse{1};
  std::string label;
};

Source resolve_pulse(const Options& o, const PhysicalParams& params) {
  const int chosen = int(o.ms) + int(!o.pulse_file.empty()) + int(o.N > 0);
  if (chosen != 1) throw PreconditionError("choose exactly one pulse source: --ms, --pulse <file> or --N <order>");
  if (o.ms) return {rescale_to_target_phase(FourierPulse::ms_baseline(), params), "ms"};
  if (!o.pulse_file.empty()) {
    auto pulse = stage("load pulse", [&] { return load_pulse(o.pulse_file); });
    pulse = stage("rescale", [&] {
      pulse.require_closed();
      return rescale_to_target_phase(pulse, params);
    });
    return {pulse, fs::path(o.pulse_file).stem().string()};
  }
  auto opt = stage("optimize", [&] { return optimize_pulse(o.N, o.l, params); });
  return {opt.pulse, "N" + std::to_string(o.N) + "_l" + std::to_string(o.l)};
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2) throw PreconditionError("--points must be >= 2");
  std::vector<double> g(points);
  for (int k = 0; k < points; ++k) g[k] = lo + (hi - lo) * k / (points - 1);
  g.back() = hi;
  return g;
}

std::vector<double> dt_grid(const Options& o) {
  if (!(o.dt_min > 0.0) || !(o.dt_max > o.dt_min)) throw PreconditionError("need 0 < --dt-min < --dt-max");
  if (o.dt_max > 0.2) throw PreconditionError("--dt-max must not exceed 0.2");
  if (o.dt_points < 2) throw PreconditionError("--dt-points must be >= 2");
  if (o.dt_min == 1e-4 && o.dt_max == 0.2 && o.dt_points == 81) return default_dt_grid();
  std::vector<double> mags(o.dt_points);
  const double lo = std::log(o.dt_min), hi = std::log(o.dt_max);
  for (int k = 0; k < o.dt_points; ++k) mags[k] = std::exp(lo + (hi - lo) * k / (o.dt_points - 1));
  mags.front() = o.dt_min;
  mags.back() = o.dt_max;
  std::vector<double> grid;
  for (auto it = mags.rbegin(); it != mags.rend(); ++it) grid.push_back(-*it);
  grid.push_back(0.0);
  grid.insert(grid.end(), mags.begin(), mags.end());
  return grid;
}

void maybe_svg(const Options& o, const std::string& name, const svg::Plot& plot, std::span<const svg::Series> series,
               std::ostream& out) {
  if (o.svg) write_file(o, name, svg::render(plot, series), out);
}

int cmd_optimize(const Options& o, std::ostream& out) {
  if (o.N <= 0) throw PreconditionError("optimize needs --N");
  const PhysicalParams params(o.eta, o.xi0);
  stage("constraints", [&] { return build_constraint_matrix(o.l, o.N); });
  const auto result = stage("optimize", [&] { return optimize_pulse(o.N, o.l, params); });
  const std::string tag = "N" + std::to_string(o.N) + "_l" + std::to_string(o.l);
  write_file(o, "optimize_" + tag + ".json", optimal_pulse_to_json(result).dump(2) + "\n", out);
  write_file(o, "pulse_" + tag + ".json", pulse_to_json(result.pulse).dump(2) + "\n", out);
  out << "N=" << o.N << " l=" << o.l << "  ratio |A|/P = " << fmt(result.ratio, 15)
      << "  power overhead = " << fmt(result.overhead_percent(), 6) << "%\n";
  out << "residuals: constraint " << fmt(result.constraint_residual, 3) << ", eigen "
      << fmt(result.eigen_residual, 3) << ", phase " << fmt(result.phase_residual, 3) << '\n';
  if (result.sign_warning) out << "warning: largest |eigenvalue| was positive; negative branch selected\n";
  return kOk;
}

int cmd_power_table(const Options& o, std::ostream& out) {
  const PhysicalParams params(o.eta, o.xi0);
  const auto ns = parse_int_list(o.n_list, "--N-list");
  const auto ls = parse_int_list(o.l_list, "--l-list");
  struct Row {
    int N, l;
    double ratio = 0.0, overhead = 0.0;
  };
  std::vector<Row> rows;
  for (int l : ls)
    for (int n : ns) {
      stage("constraints", [&] { return build_constraint_matrix(l, n); });
      rows.push_back({n, l});
    }
  stage("optimize", [&] {
    parallel_for(rows.size(), o.threads, [&](std::size_t k) {
      const auto r = optimize_pulse(rows[k].N, rows[k].l, params);
      rows[k].ratio = r.ratio;
      rows[k].overhead = r.overhead_percent();
    });
    return 0;
  });

  std::ostringstream csv;
  csv << "N,l,ratio,overhead_percent\n" << std::setprecision(17);
  for (const auto& r : rows) csv << r.N << ',' << r.l << ',' << r.ratio << ',' << r.overhead << '\n';
  write_file(o, "power_table.csv", csv.str(), out);
  for (int l : ls) {
    const Row* first = nullptr;
    const Row* last = nullptr;
    for (const auto& r : rows)
      if (r.l == l) {
        if (!first) first = &r;
        last = &r;
      }
    out << "l=" << l << ": N=" << first->N << " overhead " << fmt(first->overhead, 4) << "%  ...  N=" << last->N
        << " overhead " << fmt(last->overhead, 4) << "%\n";
  }
  if (o.svg) {
    if (ls.size() > 2) throw PreconditionError("--svg plots at most two l values");
    std::vector<svg::Series> series;
    for (int l : ls) {
      svg::Series s{std::to_string(l) + " LC", {}, {}};
      for (const auto& r : rows)
        if (r.l == l) {
          s.x.push_back(r.N);
          s.y.push_back(r.overhead);
        }
      series.push_back(std::move(s));
    }
    maybe_svg(o, "power_table.svg", {"Power overhead vs N", "N", "overhead (%)", false, true}, series, out);
  }
  return kOk;
}

int cmd_scan(const Options& o, std::ostream& out) {
  const PhysicalParams params(o.eta, o.xi0);
  const auto src = resolve_pulse(o, params);
  const auto grid = dt_grid(o);
  const auto curve = stage("scan", [&] { return scan_infidelity(src.pulse, params, o.nbar, grid, o.threads); });
  std::ostringstream csv;
  write_scan_csv(csv, curve);
  write_file(o, "scan_" + src.label + ".csv", csv.str(), out);

  if (o.svg) {
    std::vector<svg::Series> series;
    auto positive = [](std::span<const ScanPoint> c, std::string label) {
      svg::Series s{std::move(label), {}, {}};
      for (const auto& p : c)
        if (p.dt_over_T > 0.0) {
          s.x.push_back(p.dt_over_T);
          s.y.push_back(p.infidelity);
        }
      return s;
    };
    series.push_back(positive(curve, src.label));
    if (src.label != "ms") {
      const auto ms = rescale_to_target_phase(FourierPulse::ms_baseline(), params);
      series.push_back(positive(scan_infidelity(ms, params, o.nbar, grid, o.threads), "ms"));
    }
    maybe_svg(o, "scan_" + src.label + ".svg", {"Infidelity vs timing error", "dt/T", "1 - F", true, true}, series,
              out);
  }

  const auto region = stage("stability region", [&] { return stability_region(curve, o.threshold); });
  out << "stability half-width = " << fmt(region.half_width, 6) << " (dt/T) at threshold " << fmt(o.threshold, 6)
      << (region.crossed ? "" : " [threshold not reached within the grid]") << '\n';
  const auto fit = stage("slope fit", [&] { return fit_loglog_slope(curve, o.fit_lo, o.fit_hi); });
  out << "slope = " << fmt(fit.slope, 6) << " +- " << fmt(fit.std_error, 2) << " over dt/T in [" << fmt(o.fit_lo)
      << ", " << fmt(o.fit_hi) << "] (" << fit.points << " points)\n";
  return kOk;
}

int cmd_populations(const Options& o, std::ostream& out) {
  const PhysicalParams params(o.eta, o.xi0);
  const auto src = resolve_pulse(o, params);
  const double T = params.gate_time();
  const auto grid = uniform_grid(0.0, 1.2 * T, o.points > 0 ? o.points : 241);
  const auto motional = o.nbar == 0.0 ? MotionalState::ground() : MotionalState::thermal(o.nbar);
  CutoffPolicy policy;
  policy.forced = o.cutoff;
  // An insufficient Fock cutoff is reported as a numerical failure here.
  const auto pts = stage("populations", [&] {
    try {
      return populations_vs_time(src.pulse, params, motional, grid, policy, o.threads);
    } catch (const PreconditionError& e) {
      throw NumericalError(e.what());
    }
  });
  std::ostringstream csv;
  write_populations_csv(csv, pts, T);
  write_file(o, "populations_" + src.label + ".csv", csv.str(), out);

  const auto at_T = std::min_element(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    return std::abs(a.t - T) < std::abs(b.t - T);
  });
  out << "t/T = " << fmt(at_T->t / T) << ": P_gg = " << fmt(at_T->p_gg, 10) << ", P_ee = " << fmt(at_T->p_ee, 10)
      << '\n';
  out << "steepness max |dP_gg/d(t/T)| over |t - T| < 0.05 T = " << fmt(population_steepness(pts, T)) << '\n';
  if (o.svg) {
    std::vector<svg::Series> series(2);
    series[0].label = "P_gg";
    series[1].label = "P_ee";
    for (const auto& p : pts) {
      series[0].x.push_back(p.t / T);
      series[0].y.push_back(p.p_gg);
      series[1].x.push_back(p.t / T);
      series[1].y.push_back(p.p_ee);
    }
    maybe_svg(o, "populations_" + src.label + ".svg", {"Populations", "t/T", "population", false, false}, series, out);
  }
  return kOk;
}

int cmd_envelope(const Options& o, std::ostream& out) {
  const PhysicalParams params(o.eta, o.xi0);
  const auto src = resolve_pulse(o, params);
  const double T = params.gate_time();
  const auto ms = rescale_to_target_phase(FourierPulse::ms_baseline(), params);
  const double unit = eval_envelope(ms, params, 0.0);
  const auto grid = uniform_grid(0.0, T, o.points > 0 ? o.points : 401);

  std::ostringstream csv;
  csv << "t_over_T,omega\n" << std::setprecision(17);
  double peak = 0.0;
  svg::Series s{src.label, {}, {}};
  for (double t : grid) {
    const double w = eval_envelope(src.pulse, params, t) / unit;
    peak = std::max(peak, std::abs(w));
    csv << t / T << ',' << w << '\n';
    s.x.push_back(t / T);
    s.y.push_back(w);
  }
  write_file(o, "envelope_" + src.label + ".csv", csv.str(), out);
  out << "omega is in units of the constant pulse amplitude " << fmt(unit, 10) << " (same |A(T)| = pi/2)\n";
  out << "omega(0) = " << fmt(s.y.front(), 10) << ", max |omega| = " << fmt(peak, 10) << '\n';
  maybe_svg(o, "envelope_" + src.label + ".svg", {"Pulse envelope", "t/T", "Omega / Omega_MS", false, false},
            std::span(&s, 1), out);
  return kOk;
}

int cmd_trajectory(const Options& o, std::ostream& out) {
  const PhysicalParams params(o.eta, o.xi0);
  const auto src = resolve_pulse(o, params);
  if (!(o.stop > 0.0) || o.stop > 1.2) throw PreconditionError("--stop must lie in (0, 1.2]");
  const double T = params.gate_time();
  const auto grid = uniform_grid(0.0, o.stop * T, o.points > 0 ? o.points : 401);
  const auto pts = stage("trajectory", [&] { return sample_trajectory(src.pulse, params, grid); });
  std::ostringstream csv;
  write_trajectory_csv(csv, pts);
  write_file(o, "trajectory_" + src.label + ".csv", csv.str(), out);
  const auto& end = pts.back();
  out << "endpoint t/T = " << fmt(end.t / T) << ": distance to origin " << fmt(std::hypot(end.F, end.G), 6)
      << ", A = " << fmt(end.A, 10) << '\n';
  if (o.svg) {
    std::vector<svg::Series> series;
    auto curve = [](const std::vector<TrajectoryPoint>& p, std::string label) {
      svg::Series s{std::move(label), {}, {}};
      for (const auto& q : p) {
        s.x.push_back(q.G);
        s.y.push_back(-q.F);
      }
      return s;
    };
    series.push_back(curve(pts, src.label));
    if (src.label != "ms") {
      const auto ms = rescale_to_target_phase(FourierPulse::ms_baseline(), params);
      series.push_back(curve(sample_trajectory(ms, params, grid), "ms"));
    }
    maybe_svg(o, "trajectory_" + src.label + ".svg", {"Phase-space trajectory", "G", "-F", false, false}, series, out);
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  props::SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.cutoff.forced = o.cutoff;
  cfg.params = PhysicalParams(o.eta, o.xi0);
  if (o.cutoff != 0 && o.cutoff < 10) throw PreconditionError("--cutoff must be >= 10");

  using Suite = std::function<props::PropertyResult()>;
  const std::vector<std::pair<std::string, Suite>> suites = {
      {"oracle-equivalence", [&] { return props::oracle_equivalence(cfg); }},
      {"closed-form-vs-quadrature", [&] { return props::closed_form_vs_quadrature(cfg); }},
      {"derivative-formulas", [&] { return props::derivative_formulas(cfg); }},
      {"constraint-order", [&] { return props::constraint_order(cfg); }},
      {"redundancy", [&] { return props::redundancy(cfg); }},
      {"redundancy-trend", [&] { return props::redundancy_trend(cfg); }},
      {"phase-power-bound", [&] { return props::phase_power_bound(cfg); }},
      {"basis-invariance", [&] { return props::basis_invariance(cfg); }},
      {"brute-force-optimality", [&] { return props::brute_force_optimality(cfg); }},
      {"small-cases", [&] { return props::small_cases(cfg); }},
      {"power-trends", [&] { return props::power_trends(cfg); }},
      {"slope-hierarchy", [&] { return props::slope_hierarchy(cfg); }},
      {"stability-widths", [&] { return props::stability_widths(cfg); }},
      {"population-flatness", [&] { return props::population_flatness(cfg); }},
  };

  std::vector<props::PropertyResult> results;
  if (!o.pulse_file.empty()) {
    const auto pulse = stage("load pulse", [&] { return load_pulse(o.pulse_file); });
    results.push_back(props::closure(pulse, cfg.params));
    out << props::format_result(results.back()) << '\n';
  }
  bool matched = false;
  for (const auto& [name, suite] : suites) {
    if (!o.only.empty() && o.only != name) continue;
    matched = true;
    results.push_back(suite());
    out << props::format_result(results.back()) << std::endl;
  }
  if (!o.only.empty() && !matched) throw PreconditionError("unknown property suite \"" + o.only + "\"");

  std::vector<std::string> failed;
  for (const auto& r : results)
    if (!r.passed) failed.push_back(r.name);
  out << results.size() - failed.size() << '/' << results.size() << " properties passed\n";
  if (!failed.empty()) {
    std::string names;
    for (const auto& n : failed) names += (names.empty() ? "" : ", ") + n;
    throw VerificationFailure("failing properties: " + names);
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Power-optimal amplitude-modulated Molmer-Sorensen pulses and timing-error analysis", "amgate"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "JSON file with option values; flags override it");
  app.add_option("--out", o.out_dir, "Output directory");
  app.add_option("--seed", o.seed, "Seed for randomized property suites");
  app.add_option("--threads", o.threads, "Worker threads");
  app.add_option("--eta", o.eta, "Lamb-Dicke parameter");
  app.add_option("--xi0", o.xi0, "Sideband detuning (angular frequency)");

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--N", o.N, "Fourier order of a freshly optimized pulse");
    sub->add_option("--l", o.l, "Number of linear constraints");
    sub->add_flag("--ms", o.ms, "Use the constant Molmer-Sorensen pulse");
    sub->add_option("--pulse", o.pulse_file, "Pulse JSON file (pulse or optimization result)");
    sub->add_flag("--svg", o.svg, "Also write an SVG plot");
  };

  auto* optimize = app.add_subcommand("optimize", "Optimize a pulse and write its JSON");
  optimize->add_option("--N", o.N, "Fourier order");
  optimize->add_option("--l", o.l, "Number of linear constraints");

  auto* table = app.add_subcommand("power-table", "Power overhead over a grid of N and l");
  table->add_option("--N-list", o.n_list, "Orders, e.g. 5:100 or 5,10,20 or 10:100:10");
  table->add_option("--l-list", o.l_list, "Constraint counts, e.g. 1,2");
  table->add_flag("--svg", o.svg, "Also write an SVG plot");

  auto* scan = app.add_subcommand("scan", "Infidelity against gate-timing error");
  add_source(scan);
  scan->add_option("--nbar", o.nbar, "Mean phonon number");
  scan->add_option("--dt-min", o.dt_min, "Smallest |dt|/T");
  scan->add_option("--dt-max", o.dt_max, "Largest |dt|/T (<= 0.2)");
  scan->add_option("--dt-points", o.dt_points, "Log-spaced points per sign");
  scan->add_option("--fit-lo", o.fit_lo, "Slope window lower end (dt/T)");
  scan->add_option("--fit-hi", o.fit_hi, "Slope window upper end (dt/T)");
  scan->add_option("--threshold", o.threshold, "Infidelity threshold of the stability region");

  auto* pops = app.add_subcommand("populations", "P_gg and P_ee over [0, 1.2 T]");
  add_source(pops);
  pops->add_option("--nbar", o.nbar, "Mean phonon number of the thermal initial state (0: ground state)");
  pops->add_option("--points", o.points, "Grid points (default 241)");
  pops->add_option("--cutoff", o.cutoff, "Fixed Fock cutoff (default: adaptive)");

  auto* env = app.add_subcommand("envelope", "Envelope Omega(t) over one gate period");
  add_source(env);
  env->add_option("--points", o.points, "Grid points (default 401)");

  auto* traj = app.add_subcommand("trajectory", "Phase-space trajectory (G, -F) and geometric phase");
  add_source(traj);
  traj->add_option("--points", o.points, "Grid points (default 401)");
  traj->add_option("--stop", o.stop, "End of the trajectory in units of T (e.g. 0.95)");

  auto* verify = app.add_subcommand("verify", "Run the property suites against the independent oracles");
  verify->add_option("--cutoff", o.cutoff, "Fixed Fock cutoff for the propagator oracle");
  verify->add_option("--pulse", o.pulse_file, "Also check closure of this pulse file");
  verify->add_option("--only", o.only, "Run a single suite by name");

  try {
    preload_config(argc, argv, o);
    app.parse(argc, argv);
    validate_common(o);
    if (*optimize) return cmd_optimize(o, out);
    if (*table) return cmd_power_table(o, out);
    if (*scan) return cmd_scan(o, out);
    if (*pops) return cmd_populations(o, out);
    if (*env) return cmd_envelope(o, out);
    if (*traj) return cmd_trajectory(o, out);
    if (*verify) return cmd_verify(o, out);
    return kConfigError;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const PreconditionError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace amgate::cli
