#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "hexeval/io.hpp"
#include "hexeval/metrics.hpp"

#include "support.hpp"

using namespace hexeval;
using testsupport::fixture;

namespace {

// Closed-form values for the 16-class endoscopy fixture (N=8740, C=8266),
// frozen from an independent script.
constexpr double kPooledRec = 0.945766590389016;
constexpr double kPooledSpec = 0.9963844393592677;
constexpr double kPooledAcc = 0.993220823798627;
constexpr double kPooledMcc = 0.9421510297482838;
constexpr double kRk16 = 0.9397758078291538;
constexpr double kPolypRec = 0.8463356973995272;
constexpr double kPolypPrec = 0.9572192513368984;
constexpr double kPolypMcc = 0.8953919015134764;
constexpr double kPolypF1 = 0.8983688833124217;

ConfusionMatrix table4() { return read_cm(fixture("table4.cm")); }

ConfusionMatrix random_cm(std::mt19937& rng, int k, std::int64_t max_count = 30) {
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back("c" + std::to_string(i));
    CountMatrix counts(k, k);
    for (int a = 0; a < k; ++a) {
        for (int p = 0; p < k; ++p) {
            counts(a, p) = static_cast<std::int64_t>(rng() % (max_count + 1));
        }
    }
    counts(static_cast<int>(rng() % static_cast<unsigned>(k)),
           static_cast<int>(rng() % static_cast<unsigned>(k))) += 1; // never all-zero
    return ConfusionMatrix(LabelSpace(names), counts);
}

} // namespace

TEST_CASE("binarize decomposes one class against the rest") {
    CountMatrix counts(3, 3);
    counts << 5, 1, 2, //
        0, 7, 1,       //
        3, 0, 4;
    const ConfusionMatrix cm(LabelSpace({"a", "b", "c"}), counts);
    const BinaryCounts b = binarize(cm, 0);
    CHECK(b.tp == 5);
    CHECK(b.fn == 3);
    CHECK(b.fp == 3);
    CHECK(b.tn == 12);
    CHECK(b.total() == cm.total());
    CHECK_THROWS_AS(binarize(cm, 3), ValidationError);
}

TEST_CASE("binary metrics on a hand-checked table") {
    const MetricHexagon hex = binary_metrics({2, 1, 1, 2});
    CHECK(hex.rec.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(hex.prec.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(hex.spec.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(hex.acc.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(hex.mcc.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(hex.f1.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(hex.rk == hex.mcc);
    CHECK_THROWS_AS(binary_metrics({0, 0, 0, 0}), ValidationError);
}

TEST_CASE("zero denominators flag metrics undefined instead of NaN") {
    // no actual positives and none predicted: rec, prec, f1, mcc all 0/0
    const MetricHexagon hex = binary_metrics({0, 0, 0, 5});
    CHECK_FALSE(hex.rec.defined);
    CHECK_FALSE(hex.prec.defined);
    CHECK_FALSE(hex.f1.defined);
    CHECK_FALSE(hex.mcc.defined);
    CHECK(hex.rec.value == 0.0);
    CHECK(hex.spec.defined);
    CHECK(hex.spec.value == 1.0);
    CHECK(hex.acc.value == 1.0);
}

TEST_CASE("per-class f1 is the harmonic mean of rec and prec") {
    std::mt19937 rng(11);
    for (int round = 0; round < 100; ++round) {
        const ConfusionMatrix cm = random_cm(rng, 2 + static_cast<int>(rng() % 4));
        for (const ClassMetrics& entry : per_class_table(cm)) {
            const MetricHexagon& m = entry.metrics;
            if (m.rec.defined && m.prec.defined && m.rec.value + m.prec.value > 0.0) {
                REQUIRE(m.f1.defined);
                REQUIRE(m.f1.value == doctest::Approx(2.0 * m.rec.value * m.prec.value /
                                                      (m.rec.value + m.prec.value))
                                          .epsilon(1e-12));
            }
            REQUIRE(m.rk == m.mcc);
        }
    }
}

TEST_CASE("pooled aggregation forces rec = prec = f1 = trace/N") {
    std::mt19937 rng(13);
    for (int round = 0; round < 300; ++round) {
        const ConfusionMatrix cm = random_cm(rng, 2 + static_cast<int>(rng() % 6));
        const MetricHexagon hex = pooled_hexagon(cm);
        const double ratio =
            static_cast<double>(cm.trace()) / static_cast<double>(cm.total());
        REQUIRE(hex.rec.value == ratio);
        REQUIRE(hex.prec.value == ratio);
        REQUIRE(hex.f1.value == doctest::Approx(ratio).epsilon(1e-15));
        const double k = cm.space().size();
        const double n = static_cast<double>(cm.total());
        const double c = static_cast<double>(cm.trace());
        REQUIRE(hex.acc.value ==
                doctest::Approx((k * n - 2.0 * n + 2.0 * c) / (k * n)).epsilon(1e-12));
    }
}

TEST_CASE("pooled hexagon reproduces the 16-class fixture closed forms") {
    const MetricHexagon hex = pooled_hexagon(table4());
    CHECK(hex.rec.value == doctest::Approx(kPooledRec).epsilon(1e-12));
    CHECK(hex.prec.value == doctest::Approx(kPooledRec).epsilon(1e-12));
    CHECK(hex.f1.value == doctest::Approx(kPooledRec).epsilon(1e-12));
    CHECK(hex.spec.value == doctest::Approx(kPooledSpec).epsilon(1e-12));
    CHECK(hex.acc.value == doctest::Approx(kPooledAcc).epsilon(1e-12));
    CHECK(hex.mcc.value == doctest::Approx(kPooledMcc).epsilon(1e-12));
    CHECK(hex.rk.value == doctest::Approx(kRk16).epsilon(1e-9));
}

TEST_CASE("polyp-vs-rest collapse matches the frozen binary numbers") {
    const ConfusionMatrix cm = table4();
    const ClassMap map = ClassMap::vs_rest(cm.space(), "Polyps");
    const ConfusionMatrix binary = collapse(cm, map);
    CHECK(binary.counts()(0, 0) == 358);
    CHECK(binary.counts()(0, 1) == 65);
    CHECK(binary.counts()(1, 0) == 16);
    CHECK(binary.counts()(1, 1) == 8301);

    const MetricHexagon hex = binary_metrics(binarize(binary, 0));
    CHECK(hex.rec.value == doctest::Approx(kPolypRec).epsilon(1e-12));
    CHECK(hex.prec.value == doctest::Approx(kPolypPrec).epsilon(1e-12));
    CHECK(hex.mcc.value == doctest::Approx(kPolypMcc).epsilon(1e-12));
    CHECK(hex.f1.value == doctest::Approx(kPolypF1).epsilon(1e-12));

    // the K=2 identity ties the full-matrix Rk to the binary MCC
    CHECK(rk_coefficient(binary).value == doctest::Approx(kPolypMcc).epsilon(1e-12));
}

TEST_CASE("per-class table spot checks on the 16-class fixture") {
    const ConfusionMatrix cm = table4();
    const std::vector<ClassMetrics> table = per_class_table(cm);
    REQUIRE(table.size() == 16);
    const int polyps = cm.space().index_of("Polyps");
    CHECK(table[static_cast<std::size_t>(polyps)].metrics.rec.value ==
          doctest::Approx(kPolypRec).epsilon(1e-12));
    const int instruments = cm.space().index_of("Instruments");
    CHECK(table[static_cast<std::size_t>(instruments)].metrics.rec.value == 1.0);
    CHECK(table[static_cast<std::size_t>(instruments)].metrics.prec.value ==
          doctest::Approx(0.6043956043956044).epsilon(1e-12));
}

TEST_CASE("macro hexagon averages per-class values and propagates undefined") {
    CountMatrix counts(3, 3);
    counts << 4, 1, 0, //
        2, 3, 0,       //
        0, 0, 5;
    const ConfusionMatrix cm(LabelSpace({"a", "b", "c"}), counts);
    const MetricHexagon macro = macro_hexagon(cm);
    const std::vector<ClassMetrics> table = per_class_table(cm);
    double mean_rec = 0.0;
    for (const ClassMetrics& entry : table) mean_rec += entry.metrics.rec.value;
    mean_rec /= 3.0;
    CHECK(macro.rec.defined);
    CHECK(macro.rec.value == doctest::Approx(mean_rec).epsilon(1e-12));

    // a class that is never actual nor predicted: its rec is undefined, so
    // the macro mean is too
    CountMatrix ghost = CountMatrix::Zero(3, 3);
    ghost(0, 0) = 3;
    ghost(1, 1) = 2;
    ghost(0, 1) = 1;
    const MetricHexagon with_ghost = macro_hexagon(ConfusionMatrix(cm.space(), ghost));
    CHECK_FALSE(with_ghost.rec.defined);
    CHECK(with_ghost.spec.defined);
}

TEST_CASE("rk equals binary mcc on 2-class matrices") {
    std::mt19937 rng(17);
    int compared = 0;
    for (int round = 0; round < 1000; ++round) {
        const ConfusionMatrix cm = random_cm(rng, 2);
        const MetricValue rk = rk_coefficient(cm);
        const MetricValue mcc = binary_metrics(binarize(cm, 0)).mcc;
        REQUIRE(rk.defined == mcc.defined);
        if (rk.defined) {
            REQUIRE(rk.value == doctest::Approx(mcc.value).epsilon(1e-12));
            ++compared;
        }
    }
    CHECK(compared > 500);
}

TEST_CASE("rk is 1 on perfect diagonals and undefined on degenerate margins") {
    CountMatrix perfect = CountMatrix::Zero(3, 3);
    perfect(0, 0) = 2;
    perfect(1, 1) = 5;
    perfect(2, 2) = 1;
    const LabelSpace space({"a", "b", "c"});
    CHECK(rk_coefficient(ConfusionMatrix(space, perfect)).value ==
          doctest::Approx(1.0).epsilon(1e-12));

    // every item in one actual class: N^2 - sum(t^2) = 0
    CountMatrix row = CountMatrix::Zero(3, 3);
    row(0, 0) = 4;
    row(0, 1) = 2;
    CHECK_FALSE(rk_coefficient(ConfusionMatrix(space, row)).defined);
}

TEST_CASE("hexagon axis order is fixed") {
    MetricHexagon hex;
    hex.rec.value = 1;
    hex.prec.value = 2;
    hex.spec.value = 3;
    hex.acc.value = 4;
    hex.mcc.value = 5;
    hex.f1.value = 6;
    const std::array<MetricValue, 6> axes = hexagon_axes(hex);
    for (int i = 0; i < 6; ++i) CHECK(axes[static_cast<std::size_t>(i)].value == i + 1);
    CHECK(std::string(kHexagonAxes[0]) == "rec");
    CHECK(std::string(kHexagonAxes[5]) == "f1");
}
