#include "svg.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace ere::cli {

namespace {

constexpr double kW = 800, kH = 560, kL = 70, kR = 30, kT = 40, kB = 60;

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      default: o += c;
    }
  }
  return o;
}

std::string f(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2f", x);
  return b;
}

double nice_step(double span) {
  const double raw = span / 8.0;
  const double p = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0})
    if (raw <= m * p) return m * p;
  return 10.0 * p;
}

}  // namespace

void write_svg(std::ostream& os, const Axes& ax, const std::vector<Series>& series) {
  auto X = [&](double x) { return kL + (x - ax.xmin) / (ax.xmax - ax.xmin) * (kW - kL - kR); };
  auto Y = [&](double y) { return kH - kB - (y - ax.ymin) / (ax.ymax - ax.ymin) * (kH - kT - kB); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
     << kW << ' ' << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\"" << kH - kT - kB
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double sx = nice_step(ax.xmax - ax.xmin), sy = nice_step(ax.ymax - ax.ymin);
  for (double x = std::ceil(ax.xmin / sx) * sx; x <= ax.xmax + 1e-12; x += sx) {
    os << "<line x1=\"" << f(X(x)) << "\" y1=\"" << f(kH - kB) << "\" x2=\"" << f(X(x)) << "\" y2=\"" << f(kH - kB + 5)
       << "\" stroke=\"black\"/>";
    char b[32];
    std::snprintf(b, sizeof b, "%g", std::abs(x) < 1e-12 ? 0.0 : x);
    os << "<text x=\"" << f(X(x)) << "\" y=\"" << f(kH - kB + 20) << "\" text-anchor=\"middle\">" << b << "</text>\n";
  }
  for (double y = std::ceil(ax.ymin / sy) * sy; y <= ax.ymax + 1e-12; y += sy) {
    os << "<line x1=\"" << f(kL - 5) << "\" y1=\"" << f(Y(y)) << "\" x2=\"" << f(kL) << "\" y2=\"" << f(Y(y))
       << "\" stroke=\"black\"/>";
    char b[32];
    std::snprintf(b, sizeof b, "%g", std::abs(y) < 1e-12 ? 0.0 : y);
    os << "<text x=\"" << f(kL - 8) << "\" y=\"" << f(Y(y) + 4) << "\" text-anchor=\"end\">" << b << "</text>\n";
  }
  os << "<text x=\"" << f((kL + kW - kR) / 2) << "\" y=\"" << f(kH - 15) << "\" text-anchor=\"middle\">"
     << esc(ax.xlabel) << "</text>\n";
  os << "<text x=\"18\" y=\"" << f((kT + kH - kB) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << f((kT + kH - kB) / 2) << ")\">" << esc(ax.ylabel) << "</text>\n";
  os << "<text x=\"" << f(kW / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << esc(ax.title)
     << "</text>\n";

  os << "<clipPath id=\"plot\"><rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
     << "\" height=\"" << kH - kT - kB << "\"/></clipPath>\n";
  for (const Series& s : series) {
    if (s.points.empty()) continue;
    os << "<polyline clip-path=\"url(#plot)\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (s.dashed) os << " stroke-dasharray=\"5,3\"";
    os << " points=\"";
    for (const auto& [x, y] : s.points) os << f(X(x)) << ',' << f(Y(y)) << ' ';
    os << "\"/>\n";
    const auto& [lx, ly] = s.points.back();
    os << "<text x=\"" << f(X(lx) + 3) << "\" y=\"" << f(Y(ly) - 3) << "\" fill=\"" << s.color << "\">"
       << esc(s.label) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace ere::cli
