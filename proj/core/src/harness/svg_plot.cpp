// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#include "flowgen/harness/svg_plot.hpp"

#include "flowgen/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <fmt/format.h>

namespace flowgen::harness {
namespace {

constexpr double kPanelW = 460.0;
constexpr double kPanelH = 320.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr double kLegendH = 40.0;

struct Metric {
  const char* key;
  const char* title;
  double SweepRow::*field;
};

constexpr std::array<Metric, 4> kMetrics = {{{"dtw", "DTW", &SweepRow::dtw},
                                             {"wasserstein", "Wasserstein", &SweepRow::wasserstein},
                                             {"mmd2", "MMD^2", &SweepRow::mmd2},
                                             {"spec_sim", "Spectral similarity", &SweepRow::spec_sim}}};

std::string color_for(const std::string& method, std::size_t index) {
  if (method == "fm") return "#1f77b4";
  if (method == "ddpm") return "#d62728";
  static const std::array<const char*, 4> palette = {"#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  return palette[index % palette.size()];
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string tick_label(double v) {
  const double a = std::abs(v);
  if (a != 0.0 && (a < 1e-3 || a >= 1e5)) return fmt::format("{:.2e}", v);
  return fmt::format("{:.4g}", v);
}

}  // namespace

std::string render_sweep_svg(const std::vector<SweepRow>& rows) {
  require(!rows.empty(), "render_sweep_svg: no rows");
  std::vector<std::string> methods;
  std::map<std::string, std::vector<SweepRow>> by_method;
  std::set<std::size_t> nfes;
  for (const auto& r : rows) {
    if (by_method.find(r.method) == by_method.end()) methods.push_back(r.method);
    by_method[r.method].push_back(r);
    nfes.insert(r.nfe);
  }
  for (auto& [m, v] : by_method) {
    std::stable_sort(v.begin(), v.end(), [](const SweepRow& a, const SweepRow& b) { return a.nfe < b.nfe; });
  }

  double lx_min = std::log10(static_cast<double>(*nfes.begin()));
  double lx_max = std::log10(static_cast<double>(*nfes.rbegin()));
  if (lx_max - lx_min < 1e-12) {
    lx_min -= 0.5;
    lx_max += 0.5;
  }

  const double width = 2.0 * kPanelW;
  const double height = kLegendH + 2.0 * kPanelH;
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      width, height, width, height);
  svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", width, height);

  // Legend: swatches are short lines, so the only polylines are the data.
  svg += "<g class=\"legend\">\n";
  for (std::size_t k = 0; k < methods.size(); ++k) {
    const double x = kLeft + 140.0 * static_cast<double>(k);
    const double y = kLegendH / 2.0;
    svg += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" stroke-width=\"2\"/>\n", x, y,
        x + 24.0, y, color_for(methods[k], k));
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" dominant-baseline=\"middle\">{}</text>\n", x + 30.0, y,
                       escape(methods[k]));
  }
  svg += "</g>\n";

  for (std::size_t p = 0; p < kMetrics.size(); ++p) {
    const auto& metric = kMetrics[p];
    const double ox = kPanelW * static_cast<double>(p % 2);
    const double oy = kLegendH + kPanelH * static_cast<double>(p / 2);
    const double px0 = ox + kLeft;
    const double px1 = ox + kPanelW - kRight;
    const double py0 = oy + kTop;
    const double py1 = oy + kPanelH - kBottom;

    double y_min = INFINITY;
    double y_max = -INFINITY;
    for (const auto& r : rows) {
      y_min = std::min(y_min, r.*metric.field);
      y_max = std::max(y_max, r.*metric.field);
    }
    if (y_max - y_min < 1e-12 * std::max(1.0, std::abs(y_max))) {
      const double pad = std::max(0.5 * std::abs(y_max), 1e-3);
      y_min -= pad;
      y_max += pad;
    } else {
      const double pad = 0.05 * (y_max - y_min);
      y_min -= pad;
      y_max += pad;
    }
    auto sx = [&](double nfe) { return px0 + (std::log10(nfe) - lx_min) / (lx_max - lx_min) * (px1 - px0); };
    auto sy = [&](double v) { return py1 - (v - y_min) / (y_max - y_min) * (py1 - py0); };

    svg += fmt::format("<g class=\"panel\" id=\"panel-{}\">\n", metric.key);
    svg += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"#444\"/>\n", px0,
        py0, px1 - px0, py1 - py0);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                       (px0 + px1) / 2.0, py0 - 10.0, escape(metric.title));
    for (std::size_t nfe : nfes) {
      const double x = sx(static_cast<double>(nfe));
      svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#444\"/>\n", x, py1,
                         x, py1 + 5.0);
      svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x, py1 + 18.0, nfe);
    }
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">NFE (log scale)</text>\n",
                       (px0 + px1) / 2.0, py1 + 36.0);
    for (int k = 0; k <= 4; ++k) {
      const double v = y_min + (y_max - y_min) * k / 4.0;
      const double y = sy(v);
      svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#444\"/>\n",
                         px0 - 5.0, y, px0, y);
      svg += fmt::format(
          "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" dominant-baseline=\"middle\">{}</text>\n", px0 - 8.0,
          y, tick_label(v));
    }
    for (std::size_t k = 0; k < methods.size(); ++k) {
      std::string points;
      for (const auto& r : by_method[methods[k]]) {
        if (!points.empty()) points += ' ';
        points += fmt::format("{:.2f},{:.2f}", sx(static_cast<double>(r.nfe)), sy(r.*metric.field));
      }
      svg += fmt::format(
          "<polyline data-method=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
          escape(methods[k]), points, color_for(methods[k], k));
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void render_sweep_plot(const std::filesystem::path& csv, const std::filesystem::path& svg) {
  const auto rows = load_sweep_csv(csv);
  const std::string text = render_sweep_svg(rows);
  std::ofstream out(svg);
  if (!out) throw IoError(fmt::format("cannot write '{}'", svg.string()));
  out << text;
  if (!out) throw IoError(fmt::format("write failed for '{}'", svg.string()));
}

}  // namespace flowgen::harness
