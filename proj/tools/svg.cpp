#include "svg.hpp"

#include <cmath>
#include <cstdio>

namespace pcrot::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

Canvas::Canvas(int size_px, int margin_px) : size_(size_px), margin_(margin_px) {}

double Canvas::px(double x) const { return margin_ + x * size_; }
double Canvas::py(double y) const { return margin_ + (1 - y) * size_; }

void Canvas::polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill, double opacity,
                     const std::string& stroke) {
    body_ << "<polygon clip-path=\"url(#unit)\" points=\"";
    for (auto [x, y] : pts) body_ << num(px(x)) << ',' << num(py(y)) << ' ';
    body_ << "\" fill=\"" << fill << "\" fill-opacity=\"" << num(opacity) << "\" stroke=\"" << stroke
          << "\" stroke-width=\"0.5\"/>\n";
}

void Canvas::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width,
                      bool dashed) {
    body_ << "<polyline clip-path=\"url(#unit)\" fill=\"none\" points=\"";
    for (auto [x, y] : pts) body_ << num(px(x)) << ',' << num(py(y)) << ' ';
    body_ << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << '"';
    if (dashed) body_ << " stroke-dasharray=\"4 3\"";
    body_ << "/>\n";
}

void Canvas::text(double x, double y, const std::string& s, int size) {
    body_ << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(y)) << "\" font-family=\"sans-serif\" font-size=\""
          << size << "\">" << escape(s) << "</text>\n";
}

void Canvas::frame() {
    polyline({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}, "black", 1);
    text(0.5, -0.06, "delta");
    text(-0.07, 0.5, "a");
}

std::string Canvas::str(const std::string& title) const {
    int full = size_ + 2 * margin_;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << full << "\" height=\"" << full
       << "\" viewBox=\"0 0 " << full << ' ' << full << "\">\n"
       << "<title>" << escape(title) << "</title>\n"
       << "<defs><clipPath id=\"unit\"><rect x=\"" << margin_ << "\" y=\"" << margin_ << "\" width=\"" << size_
       << "\" height=\"" << size_ << "\"/></clipPath></defs>\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body_.str() << "</svg>\n";
    return os.str();
}

std::string ramp(double t) {
    // HSV hue sweep from red to violet at full saturation.
    double h = 300 * std::fmin(std::fmax(t, 0.0), 1.0);
    double c = 1, x = c * (1 - std::fabs(std::fmod(h / 60, 2) - 1));
    double r = 0, g = 0, b = 0;
    if (h < 60) r = c, g = x;
    else if (h < 120) r = x, g = c;
    else if (h < 180) g = c, b = x;
    else if (h < 240) g = x, b = c;
    else b = c, r = x;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(std::lround(r * 255)), int(std::lround(g * 255)),
                  int(std::lround(b * 255)));
    return buf;
}

}  // namespace pcrot::svg
