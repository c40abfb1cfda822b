// SPDX-License-Identifier: Apache-2.0
#include <listal/bench/plot.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace listal::bench {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string primary_metric(std::span<const ReportRow> rows) {
  if (rows.empty()) throw std::invalid_argument("empty metrics table");
  std::set<std::string> names;
  for (const auto& r : rows) names.insert(r.metric);
  for (const char* preferred : {"accuracy", "mae"})
    if (names.count(preferred)) return preferred;
  return *names.begin();
}

std::string curves_svg(std::span<const ReportRow> rows, const std::string& metric) {
  std::vector<ReportRow> selected;
  for (const auto& r : rows)
    if (r.metric == metric) selected.push_back(r);
  if (selected.empty()) throw std::invalid_argument("no rows for metric '" + metric + "'");
  const auto summary = summarize(selected);

  std::map<std::string, std::vector<const SummaryRow*>> curves;
  double x_lo = summary.front().labeled, x_hi = x_lo;
  double y_lo = summary.front().min, y_hi = summary.front().max;
  for (const auto& s : summary) {
    curves[s.strategy].push_back(&s);
    x_lo = std::min(x_lo, s.labeled);
    x_hi = std::max(x_hi, s.labeled);
    y_lo = std::min(y_lo, s.min);
    y_hi = std::max(y_hi, s.max);
  }
  if (x_hi == x_lo) { x_lo -= 1; x_hi += 1; }
  if (y_hi == y_lo) { y_lo -= 0.5; y_hi += 0.5; }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << escape(metric) << " vs labeled samples</text>\n";
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(kLeft + plot_w)
      << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
      << num(kTop + plot_h) << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = x_lo + (x_hi - x_lo) * t / 4.0, fy = y_lo + (y_hi - y_lo) * t / 4.0;
    svg << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(kTop + plot_h + 16) << "\" text-anchor=\"middle\">"
        << escape(format_metric_value(std::round(fx))) << "</text>\n"
        << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(fy) + 4) << "\" text-anchor=\"end\">"
        << escape(format_metric_value(fy)) << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 16)
      << "\" text-anchor=\"middle\">labeled samples</text>\n</g>\n";

  std::size_t color = 0;
  for (const auto& [strategy, points] : curves) {
    const char* stroke = kPalette[color % std::size(kPalette)];
    std::ostringstream band, line;
    for (const auto* p : points) band << num(px(p->labeled)) << ',' << num(py(p->max)) << ' ';
    for (auto it = points.rbegin(); it != points.rend(); ++it)
      band << num(px((*it)->labeled)) << ',' << num(py((*it)->min)) << ' ';
    for (const auto* p : points) line << num(px(p->labeled)) << ',' << num(py(p->mean)) << ' ';
    std::string band_pts = band.str(), line_pts = line.str();
    band_pts.pop_back();
    line_pts.pop_back();
    svg << "<g data-strategy=\"" << escape(strategy) << "\">\n"
        << "<polygon points=\"" << band_pts << "\" fill=\"" << stroke << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n"
        << "<polyline points=\"" << line_pts << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << num(kLeft + plot_w + 12) << "\" y=\"" << num(kTop + 16 + 18.0 * static_cast<double>(color))
        << "\" fill=\"" << stroke << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(strategy)
        << "</text>\n</g>\n";
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

void render_curves(const std::filesystem::path& metrics_path, const std::filesystem::path& output_path,
                   const std::string& metric) {
  const auto rows = read_metrics_csv(metrics_path);
  if (rows.empty()) throw std::invalid_argument("metrics file '" + metrics_path.string() + "' has no rows");
  const std::string svg = curves_svg(rows, metric.empty() ? primary_metric(rows) : metric);
  std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write plot '" + output_path.string() + "'");
  out << svg;
}

}  // namespace listal::bench
