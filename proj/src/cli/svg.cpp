#include "amgate/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "amgate/errors.hpp"

namespace amgate::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 80, kRight = 20, kTop = 36, kBottom = 56;
constexpr const char* kColors[] = {"#1f5fa8", "#c0392b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;  // in transformed units

  double transform(double v) const { return log ? std::log10(v) : v; }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      for (double e = std::ceil(lo); e <= std::floor(hi) + 1e-9; ++e) t.push_back(std::pow(10.0, e));
      return t;
    }
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
      t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    return t;
  }
};

Axis make_axis(bool log, const std::vector<double>& values) {
  Axis a;
  a.log = log;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : values) {
    const double t = a.transform(v);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
  } else {
    const double pad = 0.04 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  a.lo = lo;
  a.hi = hi;
  return a;
}

}  // namespace

std::string render(const Plot& plot, std::span<const Series> series) {
  if (series.size() > 2) throw PreconditionError("svg plots take at most two series");

  std::vector<std::vector<std::pair<double, double>>> kept(series.size());
  std::vector<double> xs, ys;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& sr = series[s];
    if (sr.x.size() != sr.y.size()) throw PreconditionError("series x and y differ in length");
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      const double x = sr.x[i], y = sr.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((plot.log_x && x <= 0.0) || (plot.log_y && y <= 0.0)) continue;
      kept[s].emplace_back(x, y);
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  const Axis ax = make_axis(plot.log_x, xs);
  const Axis ay = make_axis(plot.log_y, ys);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (ax.transform(x) - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (ay.transform(y) - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(plot.title) << "</text>\n";
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
      << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    const double x = px(t);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(x) << "\" y2=\""
        << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = py(t);
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << tick_label(t)
        << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12) << "\" text-anchor=\"middle\">"
      << escape(plot.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(kTop + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";

  for (std::size_t s = 0; s < kept.size(); ++s) {
    out << "<polyline fill=\"none\" stroke=\"" << kColors[s] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < kept[s].size(); ++i)
      out << (i ? " " : "") << num(px(kept[s][i].first)) << ',' << num(py(kept[s][i].second));
    out << "\"/>\n";
    const double ly = kTop + 16 + 16 * s;
    out << "<line x1=\"" << num(kLeft + pw - 120) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(kLeft + pw - 100)
        << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << kColors[s] << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << num(kLeft + pw - 95) << "\" y=\"" << num(ly) << "\">" << escape(series[s].label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace amgate::svg
