#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace etop::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::string svg_spectrum_panels(const std::vector<SpectrumPanel>& panels) {
  const double size = 220.0, margin = 10.0, pad = 14.0;
  const double width = panels.empty() ? size : panels.size() * (size + pad) - pad;
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width + 2 * margin) +
       "\" height=\"" + num(size + 2 * margin + 16.0) + "\">\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const double x0 = margin + p * (size + pad);
    const double y0 = margin;
    const double cx = x0 + size / 2, cy = y0 + size / 2;
    const double scale = size / 2.6;  // axes run to +-1.3
    s += "<g>\n";
    s += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(size) +
         "\" height=\"" + num(size) + "\" fill=\"none\" stroke=\"#999\"/>\n";
    s += "<circle class=\"unit\" cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
         num(scale) + "\" fill=\"none\" stroke=\"#bbb\"/>\n";
    s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(cy) + "\" x2=\"" + num(x0 + size) +
         "\" y2=\"" + num(cy) + "\" stroke=\"#ddd\"/>\n";
    s += "<line x1=\"" + num(cx) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(cx) + "\" y2=\"" +
         num(y0 + size) + "\" stroke=\"#ddd\"/>\n";
    for (const auto& lambda : panels[p].eigenvalues) {
      s += "<circle class=\"eig\" cx=\"" + num(cx + scale * lambda.real()) + "\" cy=\"" +
           num(cy - scale * lambda.imag()) + "\" r=\"2\" fill=\"#1f77b4\"/>\n";
    }
    char label[64];
    std::snprintf(label, sizeof(label), "eps = %.6g", panels[p].epsilon);
    s += "<text x=\"" + num(x0 + 4) + "\" y=\"" + num(y0 + size + 14) +
         "\" font-size=\"11\" font-family=\"sans-serif\">" + label + "</text>\n";
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string svg_sweep_curves(const std::vector<std::vector<SweepCurvePoint>>& curves) {
  const double width = 560.0, height = 360.0, margin = 42.0;
  double lo = 0.0, hi = 1.0;
  double vmin = 0.0, vmax = 1.0;
  bool any = false;
  for (const auto& curve : curves)
    for (const auto& pt : curve) {
      const double lx = std::log10(pt.epsilon);
      if (!any) {
        lo = hi = lx;
        vmin = vmax = pt.value;
        any = true;
      } else {
        lo = std::min(lo, lx);
        hi = std::max(hi, lx);
        vmin = std::min(vmin, pt.value);
        vmax = std::max(vmax, pt.value);
      }
    }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  vmax = std::max(vmax, 1.0);
  vmin = std::min(vmin, 0.0);
  const auto px = [&](double leps) {
    return margin + (leps - lo) / (hi - lo) * (width - 2 * margin);
  };
  const auto py = [&](double v) {
    return height - margin - (v - vmin) / (vmax - vmin) * (height - 2 * margin);
  };

  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
       num(height) + "\">\n";
  s += "<rect x=\"" + num(margin) + "\" y=\"" + num(margin) + "\" width=\"" +
       num(width - 2 * margin) + "\" height=\"" + num(height - 2 * margin) +
       "\" fill=\"none\" stroke=\"#999\"/>\n";
  const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  for (std::size_t r = 0; r < curves.size(); ++r) {
    if (curves[r].empty()) continue;
    std::string pts;
    for (const auto& pt : curves[r]) {
      pts += num(px(std::log10(pt.epsilon))) + "," + num(py(pt.value)) + " ";
    }
    s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
         colors[r % 10] + "\"/>\n";
    for (const auto& pt : curves[r])
      s += "<circle class=\"eig\" cx=\"" + num(px(std::log10(pt.epsilon))) + "\" cy=\"" +
           num(py(pt.value)) + "\" r=\"2\" fill=\"" + colors[r % 10] + "\"/>\n";
  }
  char label[96];
  std::snprintf(label, sizeof(label), "log10(eps) from %.3g to %.3g", lo, hi);
  s += "<text x=\"" + num(margin) + "\" y=\"" + num(height - 8.0) +
       "\" font-size=\"11\" font-family=\"sans-serif\">" + label + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace etop::cli
