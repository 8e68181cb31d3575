#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hexeval/curves.hpp"
#include "hexeval/metrics.hpp"

namespace hexeval {

/// Plot geometry, exposed so tests can verify vertex positions.
inline constexpr double kHexCenterX = 260.0;
inline constexpr double kHexCenterY = 250.0;
inline constexpr double kHexRadius = 170.0;

/// Radial position of `value` on an axis floored at `min_axis`:
/// (value - min_axis)/(1 - min_axis), clamped to [0,1]. Undefined metrics
/// plot at the center.
double hexagon_radius(const MetricValue& value, double min_axis);

/// Absolute SVG coordinates of axis vertex `axis` (0 = REC at the top, then
/// clockwise in kHexagonAxes order) at the given value.
CurvePoint hexagon_vertex(int axis, const MetricValue& value, double min_axis);

struct HexagonSeries {
    std::string label;
    MetricHexagon values;
};

/// Radar plot of one or more hexagons over shared axes with a legend.
/// min_axis is the value at the center and must lie in [0,1).
std::string hexagon_svg(const std::vector<HexagonSeries>& series, double min_axis);
void write_hexagon_svg(const std::string& path, const std::vector<HexagonSeries>& series,
                       double min_axis);

/// Line plot of a ROC or PRC curve on a unit square. ROC draws the chance
/// diagonal; PRC draws the horizontal prevalence baseline.
std::string curve_svg(const Curve& curve, const std::string& title, const std::string& x_label,
                      const std::string& y_label, bool diagonal_baseline);
void write_curve_svg(const std::string& path, const Curve& curve, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     bool diagonal_baseline);

/// Escapes &, <, >, and quotes for use in XML text and attribute values.
std::string xml_escape(const std::string& text);

} // namespace hexeval
