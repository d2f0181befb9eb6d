#include "moeadps/svg.hpp"

#include <sstream>

#include "moeadps/csv.hpp"

namespace moeadps::svg {

namespace {

std::string num(double v) { return csv::format(v); }

}  // namespace

Document::Document(double width, double height)
    : width_(width), height_(height) {}

void Document::open_group(const std::string& id, double tx, double ty) {
  body_.push_back("<g id=\"" + id + "\" transform=\"translate(" + num(tx) +
                  "," + num(ty) + ")\">");
}

void Document::close_group() { body_.push_back("</g>"); }

void Document::rect(double x, double y, double w, double h,
                    const std::string& fill, double opacity,
                    const std::string& stroke) {
  std::string el = "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" +
                   num(w) + "\" height=\"" + num(h) + "\" fill=\"" + fill +
                   "\"";
  if (opacity != 1.0) el += " fill-opacity=\"" + num(opacity) + "\"";
  if (!stroke.empty()) el += " stroke=\"" + stroke + "\"";
  el += "/>";
  body_.push_back(el);
}

void Document::line(double x1, double y1, double x2, double y2,
                    const std::string& stroke, double width,
                    const std::string& dash) {
  std::string el = "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) +
                   "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
                   "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) +
                   "\"";
  if (!dash.empty()) el += " stroke-dasharray=\"" + dash + "\"";
  el += "/>";
  body_.push_back(el);
}

void Document::polyline(const std::vector<std::pair<double, double>>& pts,
                        const std::string& stroke, double width,
                        const std::string& dash) {
  if (pts.empty()) return;
  std::string el = "<polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) el += ' ';
    el += num(pts[i].first) + "," + num(pts[i].second);
  }
  el += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
        num(width) + "\"";
  if (!dash.empty()) el += " stroke-dasharray=\"" + dash + "\"";
  el += "/>";
  body_.push_back(el);
}

void Document::polygon(const std::vector<std::pair<double, double>>& pts,
                       const std::string& fill, double opacity) {
  if (pts.empty()) return;
  std::string el = "<polygon points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) el += ' ';
    el += num(pts[i].first) + "," + num(pts[i].second);
  }
  el += "\" fill=\"" + fill + "\"";
  if (opacity != 1.0) el += " fill-opacity=\"" + num(opacity) + "\"";
  el += " stroke=\"none\"/>";
  body_.push_back(el);
}

void Document::circle(double cx, double cy, double r, const std::string& fill) {
  body_.push_back("<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) +
                  "\" r=\"" + num(r) + "\" fill=\"" + fill + "\"/>");
}

void Document::text(double x, double y, const std::string& s, double size,
                    const std::string& anchor) {
  body_.push_back("<text x=\"" + num(x) + "\" y=\"" + num(y) +
                  "\" font-size=\"" + num(size) +
                  "\" font-family=\"sans-serif\" text-anchor=\"" + anchor +
                  "\">" + s + "</text>");
}

std::string Document::str() const {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_)
      << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_)
      << " " << num(height_) << "\">\n";
  for (const auto& el : body_) out << el << '\n';
  out << "</svg>\n";
  return out.str();
}

void draw_axes(Document& doc, const Mapper& m, const std::string& x_label,
               const std::string& y_label, int ticks) {
  doc.line(m.px0, m.py0, m.px1, m.py0, "#333", 1.0);
  doc.line(m.px0, m.py0, m.px0, m.py1, "#333", 1.0);
  for (int i = 0; i < ticks; ++i) {
    const double fx = m.x0 + (m.x1 - m.x0) * i / (ticks - 1);
    const double fy = m.y0 + (m.y1 - m.y0) * i / (ticks - 1);
    doc.line(m.px(fx), m.py0, m.px(fx), m.py0 + 4, "#333", 1.0);
    doc.text(m.px(fx), m.py0 + 16, num(fx), 10, "middle");
    doc.line(m.px0 - 4, m.py(fy), m.px0, m.py(fy), "#333", 1.0);
    doc.text(m.px0 - 6, m.py(fy) + 3, num(fy), 10, "end");
  }
  doc.text((m.px0 + m.px1) / 2, m.py0 + 32, x_label, 12, "middle");
  doc.text(m.px0, m.py1 - 8, y_label, 12, "start");
}

}  // namespace moeadps::svg
