#include "cab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cab/errors.hpp"

namespace cab {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;

const char* kPalette[8] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << v;
  return os.str();
}

}  // namespace

std::string render_regret_svg(const std::vector<AggregateCurve>& curves,
                              const std::string& title) {
  if (curves.empty()) throw ConfigError("nothing to plot");
  double x_min = 1e300, x_max = -1e300, y_max = 0.0;
  for (const auto& c : curves) {
    if (c.points.empty()) throw ConfigError("curve '" + c.policy + "' is empty");
    for (const auto& p : c.points) {
      if (p.t < 1) throw ConfigError("checkpoints must be >= 1");
      x_min = std::min(x_min, static_cast<double>(p.t));
      x_max = std::max(x_max, static_cast<double>(p.t));
      y_max = std::max(y_max, p.mean + p.ci_halfwidth);
    }
  }
  const double lx_min = std::log10(x_min);
  const double lx_max = std::log10(std::max(x_max, x_min + 1e-9));
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  const auto px = [&](double t) {
    return kLeft + (std::log10(t) - lx_min) / (lx_max - lx_min) *
                       (kWidth - kLeft - kRight);
  };
  const auto py = [&](double v) {
    return kHeight - kBottom - v / y_max * (kHeight - kTop - kBottom);
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (!title.empty())
    os << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
          "font-size=\"15\">"
       << escape_xml(title) << "</text>\n";

  // Axes.
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kHeight - kBottom)
     << "\" x2=\"" << num(kWidth - kRight) << "\" y2=\"" << num(kHeight - kBottom)
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\""
     << num(kLeft) << "\" y2=\"" << num(kHeight - kBottom)
     << "\" stroke=\"black\"/>\n";

  // Log-spaced x ticks at powers of ten inside the range.
  for (long e = static_cast<long>(std::floor(lx_min));
       e <= static_cast<long>(std::ceil(lx_max)); ++e) {
    const double t = std::pow(10.0, static_cast<double>(e));
    if (t < x_min * 0.999 || t > x_max * 1.001) continue;
    const double x = px(t);
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(kHeight - kBottom)
       << "\" x2=\"" << num(x) << "\" y2=\"" << num(kHeight - kBottom + 5)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kBottom + 20)
       << "\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  os << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\""
     << num(kHeight - 10) << "\" text-anchor=\"middle\">horizon t</text>\n";

  // y ticks.
  for (int i = 0; i <= 5; ++i) {
    const double v = y_max * i / 5.0;
    const double y = py(v);
    os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\""
       << num(kLeft) << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
       << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  os << "<text x=\"16\" y=\"" << num((kTop + kHeight - kBottom) / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num((kTop + kHeight - kBottom) / 2) << ")\">mean pseudo-regret</text>\n";

  // Confidence bands first so the lines draw on top.
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const auto& c = curves[ci];
    const char* color = kPalette[ci % 8];
    bool has_band = false;
    for (const auto& p : c.points) has_band |= p.ci_halfwidth > 0.0;
    if (!has_band) continue;
    os << "<polygon fill=\"" << color << "\" fill-opacity=\"0.18\" stroke=\"none\" points=\"";
    for (const auto& p : c.points)
      os << num(px(static_cast<double>(p.t))) << ","
         << num(py(std::min(p.mean + p.ci_halfwidth, y_max))) << " ";
    for (auto it = c.points.rbegin(); it != c.points.rend(); ++it)
      os << num(px(static_cast<double>(it->t))) << ","
         << num(py(std::max(it->mean - it->ci_halfwidth, 0.0))) << " ";
    os << "\"/>\n";
  }
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const auto& c = curves[ci];
    const char* color = kPalette[ci % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : c.points)
      os << num(px(static_cast<double>(p.t))) << "," << num(py(p.mean)) << " ";
    os << "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(ci);
    os << "<line x1=\"" << num(kLeft + 10) << "\" y1=\"" << num(ly) << "\" x2=\""
       << num(kLeft + 34) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
       << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << num(kLeft + 40) << "\" y=\"" << num(ly + 4) << "\">"
       << escape_xml(c.policy) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace cab
