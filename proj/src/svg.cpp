#include "kellerpath/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ks {

namespace {
const char* kColors[] = {"#1f6fb2", "#d1495b", "#3a9d5d", "#8d5fd3",
                         "#c78a2d", "#3aa6a6"};
}

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<SvgSeries>& series) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  const double W = 800, H = 500, L = 70, R = 20, T = 40, B = 50;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" "
               "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
               W, H, W, H);
  std::fprintf(f, "<rect width=\"%g\" height=\"%g\" fill=\"white\"/>\n", W, H);
  std::fprintf(f,
               "<text x=\"%g\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
               "text-anchor=\"middle\">%s</text>\n",
               W / 2, title.c_str());
  // axes
  std::fprintf(f,
               "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
               L, H - B, W - R, H - B);
  std::fprintf(f,
               "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
               L, T, L, H - B);
  for (int i = 0; i <= 5; ++i) {
    const double x = xmin + (xmax - xmin) * i / 5.0;
    const double y = ymin + (ymax - ymin) * i / 5.0;
    std::fprintf(f,
                 "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" "
                 "text-anchor=\"middle\">%.6g</text>\n",
                 px(x), H - B + 18, x);
    std::fprintf(f,
                 "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" "
                 "text-anchor=\"end\">%.6g</text>\n",
                 L - 6, py(y) + 4, y);
    std::fprintf(f,
                 "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#dddddd\"/>\n",
                 L, py(y), W - R, py(y));
  }
  std::fprintf(f,
               "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"13\" "
               "text-anchor=\"middle\">%s</text>\n",
               (L + W - R) / 2, H - 12, xlabel.c_str());
  std::fprintf(f,
               "<text x=\"16\" y=\"%g\" font-family=\"sans-serif\" font-size=\"13\" "
               "text-anchor=\"middle\" transform=\"rotate(-90 16 %g)\">%s</text>\n",
               (T + H - B) / 2, (T + H - B) / 2, ylabel.c_str());

  int ci = 0;
  for (const auto& s : series) {
    const char* color = kColors[ci % 6];
    std::fprintf(f, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"",
                 color);
    for (std::size_t i = 0; i < s.x.size(); ++i)
      std::fprintf(f, "%.3f,%.3f ", px(s.x[i]), py(s.y[i]));
    std::fprintf(f, "\"/>\n");
    if (!s.label.empty())
      std::fprintf(f,
                   "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" "
                   "font-size=\"12\" fill=\"%s\">%s</text>\n",
                   W - R - 150.0, T + 16.0 * (ci + 1), color, s.label.c_str());
    ++ci;
  }
  std::fprintf(f, "</svg>\n");
  std::fclose(f);
}

}  // namespace ks
