#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace pcrot::svg {

// Minimal SVG 1.1 writer over the unit square [0,1]^2 with y pointing up.
class Canvas {
public:
    Canvas(int size_px, int margin_px);
    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill, double opacity,
                 const std::string& stroke = "none");
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width,
                  bool dashed = false);
    void text(double x, double y, const std::string& s, int size = 12);
    void frame();
    std::string str(const std::string& title) const;

private:
    double px(double x) const;
    double py(double y) const;
    int size_, margin_;
    std::ostringstream body_;
};

// Hue ramp used to grade tongues by rotation number.
std::string ramp(double t);

}  // namespace pcrot::svg
