#pragma once

#include <string>
#include <utility>
#include <vector>

namespace moeadps::svg {

// Linear map from data coordinates into a pixel box; y grows upward in data
// space and downward in pixel space.
struct Mapper {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;      // data ranges
  double px0 = 0.0, px1 = 1.0, py0 = 1.0, py1 = 0.0;  // pixel box, py0 bottom

  double px(double x) const {
    return px0 + (x - x0) / (x1 - x0) * (px1 - px0);
  }
  double py(double y) const {
    return py0 + (y - y0) / (y1 - y0) * (py1 - py0);
  }
};

// Accumulates SVG elements; output is deterministic for identical inputs.
class Document {
 public:
  Document(double width, double height);

  void open_group(const std::string& id, double tx, double ty);
  void close_group();

  void rect(double x, double y, double w, double h, const std::string& fill,
            double opacity = 1.0, const std::string& stroke = "");
  void line(double x1, double y1, double x2, double y2,
            const std::string& stroke, double width = 1.0,
            const std::string& dash = "");
  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& stroke, double width = 1.5,
                const std::string& dash = "");
  void polygon(const std::vector<std::pair<double, double>>& pts,
               const std::string& fill, double opacity = 1.0);
  void circle(double cx, double cy, double r, const std::string& fill);
  void text(double x, double y, const std::string& s, double size = 12.0,
            const std::string& anchor = "start");

  std::string str() const;

 private:
  double width_, height_;
  std::vector<std::string> body_;
};

// Frame, ticks and labels for a mapped panel.
void draw_axes(Document& doc, const Mapper& m, const std::string& x_label,
               const std::string& y_label, int ticks = 5);

}  // namespace moeadps::svg
