#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace condspec::svg {

namespace {

const char* kPalette[] = {"#3465a4", "#cc0000", "#4e9a06",
                          "#f57900", "#75507b", "#555753"};

std::string trim_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

// Tick positions at a 1-2-5 progression covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi) {
  if (!(hi > lo)) return {lo};
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9;
       t += step) {
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

}  // namespace

std::string line_chart(const ChartSpec& spec,
                       const std::vector<Series>& series) {
  const double ml = 72, mr = 18, mt = 40, mb = 52;
  const double pw = spec.width - ml - mr;
  const double ph = spec.height - mt - mb;

  auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };

  Range xr, yr;
  std::set<double> raw_xs;
  for (const Series& s : series) {
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (spec.log_x && !(x > 0.0)) continue;
      xr.include(tx(x));
      yr.include(y);
      raw_xs.insert(x);
    }
  }
  if (!(xr.hi >= xr.lo)) xr = {0.0, 1.0};
  if (!(yr.hi >= yr.lo)) yr = {0.0, 1.0};
  if (xr.hi == xr.lo) {
    xr.lo -= 0.5;
    xr.hi += 0.5;
  }
  if (yr.hi == yr.lo) {
    yr.lo -= 0.5;
    yr.hi += 0.5;
  }
  const double ypad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= ypad;
  yr.hi += ypad;

  auto px = [&](double x) { return ml + (tx(x) - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return mt + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << spec.width << "\" height=\"" << spec.height << "\" viewBox=\"0 0 "
     << spec.width << ' ' << spec.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">"
     << spec.title << "</text>\n";

  // Ticks: for a log axis with few distinct sample points, tick the samples.
  std::vector<double> xticks;
  if (spec.log_x && raw_xs.size() <= 12) {
    xticks.assign(raw_xs.begin(), raw_xs.end());
  } else if (spec.log_x) {
    for (double e = std::floor(xr.lo); e <= std::ceil(xr.hi); e += 1.0) {
      xticks.push_back(std::pow(10.0, e));
    }
  } else {
    xticks = nice_ticks(xr.lo, xr.hi);
  }
  for (double t : xticks) {
    const double x = px(t);
    if (x < ml - 1e-6 || x > ml + pw + 1e-6) continue;
    os << "<line x1=\"" << x << "\" y1=\"" << mt + ph << "\" x2=\"" << x
       << "\" y2=\"" << mt << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
       << "<text x=\"" << x << "\" y=\"" << mt + ph + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << trim_number(t) << "</text>\n";
  }
  for (double t : nice_ticks(yr.lo, yr.hi)) {
    const double y = py(t);
    if (y < mt - 1e-6 || y > mt + ph + 1e-6) continue;
    os << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw
       << "\" y2=\"" << y << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
       << "<text x=\"" << ml - 6 << "\" y=\"" << y + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << trim_number(t) << "</text>\n";
  }

  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
     << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333333\"/>\n"
     << "<text x=\"" << ml + pw / 2 << "\" y=\"" << spec.height - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\">"
     << spec.x_label << "</text>\n"
     << "<text x=\"16\" y=\"" << mt + ph / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
        " transform=\"rotate(-90 16 "
     << mt + ph / 2 << ")\">" << spec.y_label << "</text>\n";

  int color = 0;
  double legend_y = mt + 14;
  for (const Series& s : series) {
    const char* stroke = kPalette[color % 6];
    std::ostringstream pts;
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (spec.log_x && !(x > 0.0)) continue;
      pts << px(x) << ',' << py(y) << ' ';
    }
    os << "<polyline fill=\"none\" stroke=\"" << stroke
       << "\" stroke-width=\"1.6\" points=\"" << pts.str() << "\"/>\n";
    if (!s.label.empty()) {
      os << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << legend_y
         << "\" x2=\"" << ml + pw - 126 << "\" y2=\"" << legend_y
         << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n"
         << "<text x=\"" << ml + pw - 120 << "\" y=\"" << legend_y + 4
         << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
         << "</text>\n";
      legend_y += 18;
    }
    ++color;
  }
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace condspec::svg
