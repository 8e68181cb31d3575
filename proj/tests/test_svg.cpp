#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "hexeval/io.hpp"
#include "hexeval/svg.hpp"

#include "support.hpp"

using namespace hexeval;
using testsupport::TempDir;
using testsupport::xml_well_formed;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

MetricHexagon filled(double v) {
    MetricHexagon hex;
    hex.rec = hex.prec = hex.spec = hex.acc = hex.mcc = hex.f1 = hex.rk = {v, true};
    return hex;
}

} // namespace

TEST_CASE("hexagon radius maps values into the unit interval") {
    CHECK(hexagon_radius({1.0, true}, 0.0) == 1.0);
    CHECK(hexagon_radius({0.0, true}, 0.0) == 0.0);
    CHECK(hexagon_radius({0.5, true}, 0.0) == 0.5);
    // paper-style floor: 0.9458 on axes starting at 0.75
    CHECK(hexagon_radius({0.9458, true}, 0.75) == doctest::Approx(0.7832).epsilon(1e-12));
    // clamped below the floor, and undefined values sit at the center
    CHECK(hexagon_radius({0.3, true}, 0.75) == 0.0);
    CHECK(hexagon_radius({0.5, false}, 0.0) == 0.0);
    CHECK(hexagon_radius({1.2, true}, 0.0) == 1.0);

    CHECK_THROWS_AS(hexagon_radius({0.5, true}, 1.0), ValidationError);
    CHECK_THROWS_AS(hexagon_radius({0.5, true}, -0.1), ValidationError);
}

TEST_CASE("hexagon vertices start at the top and go clockwise") {
    const CurvePoint top = hexagon_vertex(0, {1.0, true}, 0.0);
    CHECK(top.x == doctest::Approx(260.0).epsilon(1e-9));
    CHECK(top.y == doctest::Approx(250.0 - 170.0).epsilon(1e-9));

    const CurvePoint half_top = hexagon_vertex(0, {0.5, true}, 0.0);
    CHECK(half_top.y == doctest::Approx(250.0 - 85.0).epsilon(1e-9));

    // axis 1 sits 60 degrees clockwise from the top: angle -30 degrees
    const CurvePoint prec = hexagon_vertex(1, {1.0, true}, 0.0);
    CHECK(prec.x == doctest::Approx(260.0 + 170.0 * std::sqrt(3.0) / 2.0).epsilon(1e-9));
    CHECK(prec.y == doctest::Approx(250.0 - 85.0).epsilon(1e-9));

    // axis 3 points straight down
    const CurvePoint acc = hexagon_vertex(3, {1.0, true}, 0.0);
    CHECK(acc.x == doctest::Approx(260.0).epsilon(1e-9));
    CHECK(acc.y == doctest::Approx(250.0 + 170.0).epsilon(1e-9));

    const CurvePoint center = hexagon_vertex(2, {0.4, false}, 0.0);
    CHECK(center.x == doctest::Approx(260.0).epsilon(1e-9));
    CHECK(center.y == doctest::Approx(250.0).epsilon(1e-9));

    CHECK_THROWS_AS(hexagon_vertex(6, {0.5, true}, 0.0), ValidationError);
    CHECK_THROWS_AS(hexagon_vertex(-1, {0.5, true}, 0.0), ValidationError);
}

TEST_CASE("xml_escape covers the five special characters") {
    CHECK(xml_escape("&<>\"'") == "&amp;&lt;&gt;&quot;&apos;");
    CHECK(xml_escape("plain text 123") == "plain text 123");
}

TEST_CASE("hexagon plots are well-formed XML with escaped labels") {
    std::vector<HexagonSeries> series;
    series.push_back({"model <A&B>", filled(0.9)});
    series.push_back({"baseline \"avg\"", filled(0.7)});
    const std::string svg = hexagon_svg(series, 0.5);

    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(xml_well_formed(svg));
    CHECK(svg.find("model &lt;A&amp;B&gt;") != std::string::npos);
    CHECK(svg.find("baseline &quot;avg&quot;") != std::string::npos);
    CHECK(svg.find("<A&B>") == std::string::npos);
    // four grid rings plus one polygon per series
    CHECK(count_of(svg, "<polygon") == 6);
    // axis captions are upper-cased
    CHECK(svg.find(">REC<") != std::string::npos);
    CHECK(svg.find(">MCC<") != std::string::npos);

    CHECK_THROWS_AS(hexagon_svg(series, 1.0), ValidationError);
}

TEST_CASE("curve plots are well-formed XML and carry the AUC in the title") {
    Curve curve;
    curve.auc = 0.75;
    curve.baseline = 0.5;
    curve.points = {{0.0, 0.0}, {0.0, 0.5}, {0.5, 0.5}, {0.5, 1.0}, {1.0, 1.0}};

    const std::string roc = curve_svg(curve, "ROC <test>", "FPR", "TPR", true);
    CHECK(xml_well_formed(roc));
    CHECK(roc.find("ROC &lt;test&gt; (AUC 0.75)") != std::string::npos);
    CHECK(roc.find("stroke-dasharray") != std::string::npos);

    Curve pr;
    pr.auc = 0.6;
    pr.baseline = 0.375;
    pr.points = {{0.5, 1.0}, {1.0, 0.375}};
    const std::string prc = curve_svg(pr, "PRC", "recall", "precision", false);
    CHECK(xml_well_formed(prc));
    CHECK(prc.find("(AUC 0.6)") != std::string::npos);
    CHECK(prc != roc);
}

TEST_CASE("svg writers emit exactly the generated markup") {
    TempDir dir("svg");
    std::vector<HexagonSeries> series = {{"one", filled(0.8)}};
    write_hexagon_svg(dir.file("hex.svg"), series, 0.0);
    CHECK(read_text(dir.file("hex.svg")) == hexagon_svg(series, 0.0));

    Curve curve;
    curve.auc = 1.0;
    curve.baseline = 0.5;
    curve.points = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    write_curve_svg(dir.file("roc.svg"), curve, "t", "x", "y", true);
    CHECK(read_text(dir.file("roc.svg")) == curve_svg(curve, "t", "x", "y", true));
}
