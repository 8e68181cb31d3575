#include "hexeval/svg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hexeval/io.hpp"

namespace hexeval {

namespace {

constexpr double kPi = 3.14159265358979323846;

const char* const kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c",
                                 "#9467bd", "#ff7f0e", "#17becf"};

/// Axis angle in radians; axis 0 points straight up and the rest follow
/// clockwise in 60-degree steps (SVG y grows downward).
double axis_angle(int axis) { return (-90.0 + 60.0 * axis) * kPi / 180.0; }

std::string coord(double v) {
    // Fixed 4-decimal coordinates keep files diff-stable and well under the
    // 1e-6 vertex tolerance relative to the plot radius.
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.4f", v);
    return buffer;
}

void check_min_axis(double min_axis) {
    if (!(min_axis >= 0.0 && min_axis < 1.0)) {
        throw ValidationError("axis floor must lie in [0,1), got " + format12(min_axis));
    }
}

} // namespace

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

double hexagon_radius(const MetricValue& value, double min_axis) {
    check_min_axis(min_axis);
    if (!value.defined) return 0.0;
    return std::clamp((value.value - min_axis) / (1.0 - min_axis), 0.0, 1.0);
}

CurvePoint hexagon_vertex(int axis, const MetricValue& value, double min_axis) {
    if (axis < 0 || axis >= 6) {
        throw ValidationError("hexagon axis index " + std::to_string(axis) + " out of range");
    }
    const double r = hexagon_radius(value, min_axis) * kHexRadius;
    const double angle = axis_angle(axis);
    return {kHexCenterX + r * std::cos(angle), kHexCenterY + r * std::sin(angle)};
}

std::string hexagon_svg(const std::vector<HexagonSeries>& series, double min_axis) {
    check_min_axis(min_axis);

    std::ostringstream out;
    const double width = 620.0, height = 500.0;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // Grid rings at quarter steps, labeled with the axis value they map to.
    for (int ring = 1; ring <= 4; ++ring) {
        const double fraction = ring / 4.0;
        out << "<polygon points=\"";
        for (int axis = 0; axis < 6; ++axis) {
            const double angle = axis_angle(axis);
            const double r = fraction * kHexRadius;
            if (axis > 0) out << ' ';
            out << coord(kHexCenterX + r * std::cos(angle)) << ','
                << coord(kHexCenterY + r * std::sin(angle));
        }
        out << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
        const double label_value = min_axis + fraction * (1.0 - min_axis);
        out << "<text x=\"" << coord(kHexCenterX + 4.0) << "\" y=\""
            << coord(kHexCenterY - fraction * kHexRadius - 3.0)
            << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#888888\">"
            << xml_escape(format12(label_value)) << "</text>\n";
    }

    // Axis spokes and labels.
    for (int axis = 0; axis < 6; ++axis) {
        const double angle = axis_angle(axis);
        const double x = kHexCenterX + kHexRadius * std::cos(angle);
        const double y = kHexCenterY + kHexRadius * std::sin(angle);
        out << "<line x1=\"" << coord(kHexCenterX) << "\" y1=\"" << coord(kHexCenterY)
            << "\" x2=\"" << coord(x) << "\" y2=\"" << coord(y)
            << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
        const double lx = kHexCenterX + (kHexRadius + 24.0) * std::cos(angle);
        const double ly = kHexCenterY + (kHexRadius + 24.0) * std::sin(angle);
        std::string name = kHexagonAxes[axis];
        for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        out << "<text x=\"" << coord(lx) << "\" y=\"" << coord(ly)
            << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
            << xml_escape(name) << "</text>\n";
    }

    // One polygon per series.
    for (std::size_t s = 0; s < series.size(); ++s) {
        const std::array<MetricValue, 6> values = hexagon_axes(series[s].values);
        const char* color = kPalette[s % 6];
        out << "<polygon points=\"";
        for (int axis = 0; axis < 6; ++axis) {
            const CurvePoint p = hexagon_vertex(axis, values[static_cast<std::size_t>(axis)],
                                                min_axis);
            if (axis > 0) out << ' ';
            out << coord(p.x) << ',' << coord(p.y);
        }
        out << "\" fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
    }

    // Legend.
    for (std::size_t s = 0; s < series.size(); ++s) {
        const double y = 24.0 + 20.0 * static_cast<double>(s);
        out << "<rect x=\"480\" y=\"" << coord(y - 10.0)
            << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[s % 6] << "\"/>\n"
            << "<text x=\"498\" y=\"" << coord(y)
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << xml_escape(series[s].label) << "</text>\n";
    }

    out << "</svg>\n";
    return out.str();
}

void write_hexagon_svg(const std::string& path, const std::vector<HexagonSeries>& series,
                       double min_axis) {
    write_text(path, hexagon_svg(series, min_axis));
}

namespace {

// Unit square mapped into a fixed frame.
constexpr double kPlotLeft = 60.0, kPlotTop = 50.0, kPlotSize = 320.0;

double plot_x(double x) { return kPlotLeft + x * kPlotSize; }
double plot_y(double y) { return kPlotTop + (1.0 - y) * kPlotSize; }

} // namespace

std::string curve_svg(const Curve& curve, const std::string& title, const std::string& x_label,
                      const std::string& y_label, bool diagonal_baseline) {
    std::ostringstream out;
    const double width = 440.0, height = 440.0;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    out << "<rect x=\"" << coord(kPlotLeft) << "\" y=\"" << coord(kPlotTop) << "\" width=\""
        << coord(kPlotSize) << "\" height=\"" << coord(kPlotSize)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    for (double tick = 0.0; tick <= 1.0001; tick += 0.25) {
        out << "<text x=\"" << coord(plot_x(tick)) << "\" y=\"" << coord(kPlotTop + kPlotSize + 16)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
            << xml_escape(format12(tick)) << "</text>\n";
        out << "<text x=\"" << coord(kPlotLeft - 8) << "\" y=\"" << coord(plot_y(tick) + 3)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
            << xml_escape(format12(tick)) << "</text>\n";
    }

    if (diagonal_baseline) {
        out << "<line x1=\"" << coord(plot_x(0)) << "\" y1=\"" << coord(plot_y(0)) << "\" x2=\""
            << coord(plot_x(1)) << "\" y2=\"" << coord(plot_y(1))
            << "\" stroke=\"#aaaaaa\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
    } else {
        out << "<line x1=\"" << coord(plot_x(0)) << "\" y1=\"" << coord(plot_y(curve.baseline))
            << "\" x2=\"" << coord(plot_x(1)) << "\" y2=\"" << coord(plot_y(curve.baseline))
            << "\" stroke=\"#aaaaaa\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
    }

    out << "<polyline points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        if (i > 0) out << ' ';
        out << coord(plot_x(curve.points[i].x)) << ',' << coord(plot_y(curve.points[i].y));
    }
    out << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";

    out << "<text x=\"" << coord(kPlotLeft + kPlotSize / 2) << "\" y=\"28\""
        << " font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
        << xml_escape(title + " (AUC " + format12(curve.auc) + ")") << "</text>\n";
    out << "<text x=\"" << coord(kPlotLeft + kPlotSize / 2) << "\" y=\""
        << coord(kPlotTop + kPlotSize + 38)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
        << xml_escape(x_label) << "</text>\n";
    out << "<text x=\"20\" y=\"" << coord(kPlotTop + kPlotSize / 2)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 20 " << coord(kPlotTop + kPlotSize / 2) << ")\">"
        << xml_escape(y_label) << "</text>\n";

    out << "</svg>\n";
    return out.str();
}

void write_curve_svg(const std::string& path, const Curve& curve, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     bool diagonal_baseline) {
    write_text(path, curve_svg(curve, title, x_label, y_label, diagonal_baseline));
}

} // namespace hexeval
