#include "eulersel/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eulersel {

namespace {

constexpr double kWidth = 820, kHeight = 520;
constexpr double kLeft = 80, kRight = 790, kTop = 50, kBottom = 460;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Range {
  double lo = 0.0, hi = 1.0;
  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo < 1e-300) {
      lo -= 0.5;
      hi += 0.5;
    } else {
      const double m = 0.05 * (hi - lo);
      lo -= m;
      hi += m;
    }
  }
};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void axes(std::ostringstream& os, const std::string& title, const std::string& x_label,
          const std::string& y_label, const Range& xr, const Range& yr) {
  os << "<rect x='0' y='0' width='" << kWidth << "' height='" << kHeight
     << "' fill='white'/>\n";
  os << "<text x='" << 0.5 * kWidth << "' y='28' font-size='18' text-anchor='middle'>"
     << esc(title) << "</text>\n";
  os << "<line x1='" << kLeft << "' y1='" << kBottom << "' x2='" << kRight << "' y2='" << kBottom
     << "' stroke='black'/>\n";
  os << "<line x1='" << kLeft << "' y1='" << kTop << "' x2='" << kLeft << "' y2='" << kBottom
     << "' stroke='black'/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fx = kLeft + (kRight - kLeft) * t / 5.0;
    const double vx = xr.lo + (xr.hi - xr.lo) * t / 5.0;
    os << "<line x1='" << fx << "' y1='" << kBottom << "' x2='" << fx << "' y2='" << kBottom + 5
       << "' stroke='black'/>\n";
    os << "<text x='" << fx << "' y='" << kBottom + 20
       << "' font-size='11' text-anchor='middle'>" << num(vx) << "</text>\n";
    const double fy = kBottom - (kBottom - kTop) * t / 5.0;
    const double vy = yr.lo + (yr.hi - yr.lo) * t / 5.0;
    os << "<line x1='" << kLeft - 5 << "' y1='" << fy << "' x2='" << kLeft << "' y2='" << fy
       << "' stroke='black'/>\n";
    os << "<text x='" << kLeft - 8 << "' y='" << fy + 4 << "' font-size='11' text-anchor='end'>"
       << num(vy) << "</text>\n";
  }
  os << "<text x='" << 0.5 * (kLeft + kRight) << "' y='" << kHeight - 12
     << "' font-size='13' text-anchor='middle'>" << esc(x_label) << "</text>\n";
  os << "<text x='20' y='" << 0.5 * (kTop + kBottom)
     << "' font-size='13' text-anchor='middle' transform='rotate(-90 20 "
     << 0.5 * (kTop + kBottom) << ")'>" << esc(y_label) << "</text>\n";
}

void write_svg(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
      << "'>\n"
      << body << "</svg>\n";
}

} // namespace

void write_line_svg(const std::filesystem::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
  if (series.empty()) throw std::invalid_argument("write_line_svg: no series");
  Range xr{series[0].x.front(), series[0].x.front()};
  Range yr{series[0].y.front(), series[0].y.front()};
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw std::invalid_argument("write_line_svg: bad series " + s.label);
    for (double v : s.x) xr.expand(v);
    for (double v : s.y) yr.expand(v);
  }
  xr.pad();
  yr.pad();
  auto px = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft); };
  auto py = [&](double v) { return kBottom - (v - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop); };

  std::ostringstream os;
  axes(os, title, x_label, y_label, xr, yr);
  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % 10];
    os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (size_t i = 0; i < series[s].x.size(); ++i)
      os << num(px(series[s].x[i])) << ',' << num(py(series[s].y[i])) << ' ';
    os << "'/>\n";
    os << "<text x='" << kRight - 180 << "' y='" << kTop + 16 * (s + 1) << "' font-size='12' fill='"
       << color << "'>" << esc(series[s].label) << "</text>\n";
  }
  write_svg(path, os.str());
}

void write_bar_svg(const std::filesystem::path& path, const std::string& title,
                   const std::vector<std::string>& categories,
                   const std::vector<std::pair<std::string, std::vector<double>>>& groups) {
  if (categories.empty() || groups.empty())
    throw std::invalid_argument("write_bar_svg: nothing to draw");
  Range yr{0.0, 0.0};
  for (const auto& g : groups) {
    if (g.second.size() != categories.size())
      throw std::invalid_argument("write_bar_svg: group size mismatch");
    for (double v : g.second) yr.expand(v);
  }
  yr.pad();
  auto py = [&](double v) { return kBottom - (v - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop); };

  std::ostringstream os;
  axes(os, title, "candidate", "value", Range{0.0, static_cast<double>(categories.size())}, yr);
  const double slot = (kRight - kLeft) / categories.size();
  const double bar = 0.8 * slot / groups.size();
  for (size_t c = 0; c < categories.size(); ++c) {
    for (size_t g = 0; g < groups.size(); ++g) {
      const double v = groups[g].second[c];
      const double x = kLeft + c * slot + 0.1 * slot + g * bar;
      const double y0 = py(std::max(0.0, v)), y1 = py(std::min(0.0, v));
      os << "<rect x='" << num(x) << "' y='" << num(y0) << "' width='" << num(bar)
         << "' height='" << num(std::max(1.0, y1 - y0)) << "' fill='" << kPalette[g % 10]
         << "'/>\n";
    }
    os << "<text x='" << num(kLeft + (c + 0.5) * slot) << "' y='" << kBottom + 34
       << "' font-size='10' text-anchor='middle'>" << esc(categories[c]) << "</text>\n";
  }
  for (size_t g = 0; g < groups.size(); ++g)
    os << "<text x='" << kRight - 180 << "' y='" << kTop + 16 * (g + 1) << "' font-size='12' fill='"
       << kPalette[g % 10] << "'>" << esc(groups[g].first) << "</text>\n";
  os << "<line x1='" << kLeft << "' y1='" << num(py(0.0)) << "' x2='" << kRight << "' y2='"
     << num(py(0.0)) << "' stroke='black' stroke-dasharray='4 3'/>\n";
  write_svg(path, os.str());
}

} // namespace eulersel
