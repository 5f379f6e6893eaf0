#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace elab::tools {

namespace {

constexpr double kWidth = 640.0, kHeight = 640.0;
constexpr double kMarginL = 64.0, kMarginR = 20.0;
constexpr double kMarginT = 40.0, kMarginB = 48.0;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo > hi) {
      lo = -1.0;
      hi = 1.0;
    }
    double span = hi - lo;
    if (span <= 0) span = 1.0;
    lo -= 0.05 * span;
    hi += 0.05 * span;
  }
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string render_scatter_svg(const std::string& title,
                               const std::string& x_label,
                               const std::string& y_label,
                               const std::vector<std::pair<double, double>>& pts,
                               const std::vector<PlotCurve>& curves) {
  Range rx, ry;
  bool any = false;
  for (const auto& [x, y] : pts) {
    rx.include(x);
    ry.include(y);
    any = true;
  }
  for (const auto& c : curves) {
    for (const auto& [x, y] : c.polyline) {
      rx.include(x);
      ry.include(y);
      any = true;
    }
  }
  if (!any) {
    rx = Range{-1.0, 1.0};
    ry = Range{-1.0, 1.0};
  }
  rx.pad();
  ry.pad();

  auto px = [&](double x) {
    return kMarginL + (x - rx.lo) / (rx.hi - rx.lo) *
                          (kWidth - kMarginL - kMarginR);
  };
  auto py = [&](double y) {
    return kHeight - kMarginB -
           (y - ry.lo) / (ry.hi - ry.lo) * (kHeight - kMarginT - kMarginB);
  };

  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" "
                "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                kWidth, kHeight, kWidth, kHeight);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"24\" font-size=\"15\" "
                "font-family=\"sans-serif\">%s</text>\n",
                kMarginL, title.c_str());
  s += buf;

  // Frame and tick labels.
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                kMarginL, kMarginT, kWidth - kMarginL - kMarginR,
                kHeight - kMarginT - kMarginB);
  s += buf;
  for (int i = 0; i <= 4; ++i) {
    double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
    double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-size=\"11\" "
                  "font-family=\"sans-serif\" text-anchor=\"middle\">%s"
                  "</text>\n",
                  px(fx), kHeight - kMarginB + 16.0, num(fx).c_str());
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" font-size=\"11\" "
                  "font-family=\"sans-serif\" text-anchor=\"end\">%s</text>\n",
                  kMarginL - 6.0, py(fy) + 4.0, num(fy).c_str());
    s += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"%g\" font-size=\"13\" "
                "font-family=\"sans-serif\" text-anchor=\"middle\">%s</text>\n",
                (kMarginL + kWidth - kMarginR) / 2, kHeight - 12.0,
                x_label.c_str());
  s += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"16\" y=\"%g\" font-size=\"13\" "
                "font-family=\"sans-serif\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 16 %g)\">%s</text>\n",
                (kMarginT + kHeight - kMarginB) / 2,
                (kMarginT + kHeight - kMarginB) / 2, y_label.c_str());
  s += buf;

  // Points under the curves.
  s += "<g fill=\"#1f77b4\" fill-opacity=\"0.45\">\n";
  for (const auto& [x, y] : pts) {
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.4\"/>\n",
                  px(x), py(y));
    s += buf;
  }
  s += "</g>\n";

  double label_y = kMarginT + 16.0;
  for (const auto& c : curves) {
    if (c.polyline.empty()) continue;
    std::string d = "M";
    for (std::size_t i = 0; i < c.polyline.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%s%.2f %.2f", i == 0 ? "" : " L",
                    px(c.polyline[i].first), py(c.polyline[i].second));
      d += buf;
    }
    s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + c.color +
         "\" stroke-width=\"1.5\"/>\n";
    if (!c.label.empty()) {
      std::snprintf(buf, sizeof(buf),
                    "<text x=\"%g\" y=\"%g\" font-size=\"11\" "
                    "font-family=\"sans-serif\" fill=\"%s\">%s</text>\n",
                    kWidth - kMarginR - 150.0, label_y, c.color.c_str(),
                    c.label.c_str());
      s += buf;
      label_y += 14.0;
    }
  }
  s += "</svg>\n";
  return s;
}

}  // namespace elab::tools
