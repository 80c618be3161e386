#include "ddiag/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ddiag::plots {

namespace {

constexpr double kWidth = 520.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 56.0;

std::string num(double v) {
  if (std::abs(v) < 0.005) v = 0.0;
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

std::string open_svg(double w, double h, const std::string& title) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
       "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\" font-family=\"sans-serif\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
       escape(title) + "</text>\n";
  return s;
}

std::string text(double x, double y, const std::string& body, const char* anchor = "middle",
                 int size = 11) {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + anchor +
         "\" font-size=\"" + std::to_string(size) + "\">" + escape(body) + "</text>\n";
}

std::string line(double x1, double y1, double x2, double y2, const char* stroke = "#444",
                 const char* dash = nullptr) {
  std::string s = "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
                  "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke + "\"";
  if (dash != nullptr) s += std::string(" stroke-dasharray=\"") + dash + "\"";
  return s + "/>\n";
}

}  // namespace

std::string scree_svg(const Vector& eigenvalues, const std::string& title) {
  std::string s = open_svg(kWidth, kHeight, title);
  const double left = kMargin, right = kWidth - 20.0;
  const double top = 40.0, bottom = kHeight - kMargin;
  s += line(left, bottom, right, bottom);
  s += line(left, top, left, bottom);

  const auto count = eigenvalues.size();
  const double largest = count > 0 ? std::max(eigenvalues.maxCoeff(), 0.0) : 0.0;
  s += text(left - 6, top + 4, num(largest), "end", 10);
  s += text(left - 6, bottom + 4, "0", "end", 10);
  if (count > 0) {
    const double slot = (right - left) / static_cast<double>(count);
    for (Eigen::Index i = 0; i < count; ++i) {
      const double frac = largest > 0.0 ? std::max(eigenvalues(i), 0.0) / largest : 0.0;
      const double h = frac * (bottom - top);
      const double x = left + slot * static_cast<double>(i) + slot * 0.15;
      s += "<rect class=\"bar\" x=\"" + num(x) + "\" y=\"" + num(bottom - h) + "\" width=\"" +
           num(slot * 0.7) + "\" height=\"" + num(h) + "\" fill=\"#4878a8\"/>\n";
      s += text(x + slot * 0.35, bottom + 16, std::to_string(i + 1), "middle", 10);
    }
  }
  s += text((left + right) / 2, kHeight - 12, "component");
  return s + "</svg>\n";
}

std::string scatter_svg(const Matrix& coords, const std::vector<std::string>& labels,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label) {
  std::string s = open_svg(kWidth, kHeight, title);
  const double left = kMargin, right = kWidth - 24.0;
  const double top = 40.0, bottom = kHeight - kMargin;

  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  if (coords.rows() > 0 && coords.cols() >= 2) {
    xmin = std::min(coords.col(0).minCoeff(), 0.0);
    xmax = std::max(coords.col(0).maxCoeff(), 0.0);
    ymin = std::min(coords.col(1).minCoeff(), 0.0);
    ymax = std::max(coords.col(1).maxCoeff(), 0.0);
  }
  const auto pad = [](double& lo, double& hi) {
    double span = hi - lo;
    if (!(span > 0.0)) span = 1.0;
    lo -= 0.1 * span;
    hi += 0.1 * span;
  };
  pad(xmin, xmax);
  pad(ymin, ymax);
  const auto sx = [&](double v) { return left + (v - xmin) / (xmax - xmin) * (right - left); };
  const auto sy = [&](double v) { return bottom - (v - ymin) / (ymax - ymin) * (bottom - top); };

  s += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) +
       "\" height=\"" + num(bottom - top) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  s += line(sx(0.0), top, sx(0.0), bottom, "#999", "4,3");
  s += line(left, sy(0.0), right, sy(0.0), "#999", "4,3");
  s += text((left + right) / 2, kHeight - 14, x_label);
  s += "<text x=\"16\" y=\"" + num((top + bottom) / 2) +
       "\" text-anchor=\"middle\" font-size=\"11\" transform=\"rotate(-90 16 " +
       num((top + bottom) / 2) + ")\">" + escape(y_label) + "</text>\n";

  if (coords.cols() >= 2) {
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
      const double x = sx(coords(i, 0));
      const double y = sy(coords(i, 1));
      s += "<circle class=\"point\" cx=\"" + num(x) + "\" cy=\"" + num(y) +
           "\" r=\"3.5\" fill=\"#c0392b\"/>\n";
      const auto idx = static_cast<std::size_t>(i);
      s += text(x + 5, y - 5, idx < labels.size() ? labels[idx] : std::to_string(i + 1), "start",
                10);
    }
  }
  return s + "</svg>\n";
}

std::string heatmap_svg(const Matrix& values, const std::vector<std::string>& labels,
                        const std::string& title) {
  const auto k = values.rows();
  const double cell = k > 0 ? std::min(48.0, 360.0 / static_cast<double>(k)) : 48.0;
  const double left = 110.0, top = 50.0;
  const double w = left + cell * static_cast<double>(k) + 20.0;
  const double h = top + cell * static_cast<double>(k) + 70.0;
  std::string s = open_svg(std::max(w, 260.0), h, title);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const std::string label = idx < labels.size() ? labels[idx] : std::to_string(i + 1);
    s += text(left - 6, top + cell * (static_cast<double>(i) + 0.5) + 4, label, "end", 10);
    s += text(left + cell * (static_cast<double>(i) + 0.5),
              top + cell * static_cast<double>(k) + 16, label, "middle", 10);
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const double v = std::clamp(values(i, j), 0.0, 1.0);
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - v)));
      char fill[16];
      std::snprintf(fill, sizeof fill, "#%02x%02xff", shade, shade);
      s += "<rect x=\"" + num(left + cell * static_cast<double>(j)) + "\" y=\"" +
           num(top + cell * static_cast<double>(i)) + "\" width=\"" + num(cell) +
           "\" height=\"" + num(cell) + "\" fill=\"" + fill + "\" stroke=\"white\"/>\n";
      s += text(left + cell * (static_cast<double>(j) + 0.5),
                top + cell * (static_cast<double>(i) + 0.5) + 4, num(values(i, j)), "middle", 9);
    }
  }
  return s + "</svg>\n";
}

}  // namespace ddiag::plots
