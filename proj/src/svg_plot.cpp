#include "logimap/svg_plot.hpp"

#include "logimap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <unordered_set>

namespace logimap {

namespace {

constexpr int kMargin = 60;

std::string escape(std::string_view s) {
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

MapPoint centroid(const std::vector<PlotLayer>& layers) {
  double sa = 0.0;
  double sb = 0.0;
  std::size_t n = 0;
  for (const auto& layer : layers) {
    for (const auto& p : layer.points) {
      sa += p.a;
      sb += p.b;
      ++n;
    }
  }
  if (n == 0) return {0.5, 0.5};
  return {sa / static_cast<double>(n), sb / static_cast<double>(n)};
}

} // namespace

std::string render_scatter_svg(const std::vector<PlotLayer>& layers, const PlotSpec& spec) {
  if (!(spec.zoom >= 1.0)) throw DomainError(fmt::format("zoom {} is below 1", spec.zoom));
  if (spec.pixels < 16) throw DomainError("plot canvas is too small");

  const double half = 0.5 / spec.zoom;
  MapPoint c = spec.zoom_center.value_or(spec.zoom == 1.0 ? MapPoint{0.5, 0.5} : centroid(layers));
  // Keep the view inside the unit square.
  c.a = std::clamp(c.a, half, 1.0 - half);
  c.b = std::clamp(c.b, half, 1.0 - half);
  const double x_lo = c.a - half;
  const double y_lo = c.b - half;
  const double span = 2.0 * half;
  const int px = spec.pixels;
  const int width = px + 2 * kMargin;

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" "
      "viewBox=\"0 0 {0} {0}\">\n"
      "<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n",
      width);
  if (!spec.title.empty()) {
    svg += fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" "
                       "text-anchor=\"middle\">{}</text>\n",
                       width / 2, escape(spec.title));
  }
  svg += fmt::format("<rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\" fill=\"none\" "
                     "stroke=\"#444\"/>\n",
                     kMargin, px);

  // Bisector v_{n+1} = v_n, clipped to the view.
  const double lo = std::max(x_lo, y_lo);
  const double hi = std::min(x_lo + span, y_lo + span);
  if (lo < hi) {
    auto sx = [&](double v) { return kMargin + (v - x_lo) / span * px; };
    auto sy = [&](double v) { return kMargin + px - (v - y_lo) / span * px; };
    svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                       "stroke=\"#bbb\" stroke-width=\"0.5\"/>\n",
                       sx(lo), sy(lo), sx(hi), sy(hi));
  }

  for (const auto& layer : layers) {
    svg += fmt::format("<g fill=\"{}\" data-label=\"{}\">\n", escape(layer.color),
                       escape(layer.label));
    std::unordered_set<std::uint64_t> drawn;
    const double size = std::max(layer.point_size, 1.0);
    for (const auto& p : layer.points) {
      const double fx = (p.a - x_lo) / span;
      const double fy = (p.b - y_lo) / span;
      if (fx < 0.0 || fx > 1.0 || fy < 0.0 || fy > 1.0) continue;
      const auto ix = std::min(static_cast<int>(fx * px), px - 1);
      const auto iy = std::min(static_cast<int>(fy * px), px - 1);
      const auto key = (static_cast<std::uint64_t>(ix) << 32) | static_cast<std::uint32_t>(iy);
      if (!drawn.insert(key).second) continue;
      svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n",
                         kMargin + ix, kMargin + px - 1 - iy, size, size);
    }
    svg += "</g>\n";
  }

  const auto label = [&](double x, double y, std::string_view anchor, std::string_view text) {
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" "
                       "text-anchor=\"{}\">{}</text>\n",
                       x, y, anchor, escape(text));
  };
  label(kMargin, kMargin + px + 16, "start", fmt::format("{:.6g}", x_lo));
  label(kMargin + px, kMargin + px + 16, "end", fmt::format("{:.6g}", x_lo + span));
  label(kMargin - 4, kMargin + px, "end", fmt::format("{:.6g}", y_lo));
  label(kMargin - 4, kMargin + 10, "end", fmt::format("{:.6g}", y_lo + span));
  label(kMargin + px / 2.0, kMargin + px + 36, "middle", spec.x_label);
  label(16, kMargin + px / 2.0, "middle", spec.y_label);
  svg += "</svg>\n";
  return svg;
}

} // namespace logimap
