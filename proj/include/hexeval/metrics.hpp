#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hexeval/core.hpp"

namespace hexeval {

/// One-vs-rest decomposition of a confusion matrix for a single class.
struct BinaryCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    std::int64_t total() const { return tp + fp + fn + tn; }
};

/// A metric value with an explicit undefined flag. 0/0 cases report value 0
/// and defined=false instead of NaN so report files stay diffable.
struct MetricValue {
    double value = 0.0;
    bool defined = true;

    bool operator==(const MetricValue&) const = default;
};

/// The six hexagon axes plus the multi-class Rk correlation coefficient.
/// Pooled micro aggregation reports the Gorodkin Rk; binary and per-class
/// hexagons carry rk == mcc (the K=2 identity).
struct MetricHexagon {
    MetricValue rec;
    MetricValue prec;
    MetricValue spec;
    MetricValue acc;
    MetricValue mcc;
    MetricValue f1;
    MetricValue rk;

    bool operator==(const MetricHexagon&) const = default;
};

/// Axis order used by reports and hexagon plots.
inline constexpr const char* kHexagonAxes[6] = {"rec", "prec", "spec", "acc", "mcc", "f1"};

/// The six axis values of `hex` in kHexagonAxes order.
std::array<MetricValue, 6> hexagon_axes(const MetricHexagon& hex);

/// tp = counts[k][k], fn = row k - tp, fp = column k - tp, tn = rest.
BinaryCounts binarize(const ConfusionMatrix& cm, int class_k);

/// REC, PREC, SPEC, ACC, MCC, F1 of a 2x2 table. Throws on an empty table;
/// any zero denominator flags that metric undefined with value 0.
MetricHexagon binary_metrics(const BinaryCounts& counts);

/// Micro aggregation: sum one-vs-rest counts over all K classes, then apply
/// binary_metrics. For single-label input this forces REC = PREC = F1 = C/N.
/// The rk field is the Gorodkin coefficient of the full K x K matrix.
MetricHexagon pooled_hexagon(const ConfusionMatrix& cm);

/// Macro aggregation (opt-in alternative): arithmetic mean of the per-class
/// hexagons. A mean over any undefined per-class value is itself flagged.
MetricHexagon macro_hexagon(const ConfusionMatrix& cm);

struct ClassMetrics {
    int class_index = 0;
    MetricHexagon metrics;
};

/// One-vs-rest hexagon for every class.
std::vector<ClassMetrics> per_class_table(const ConfusionMatrix& cm);

/// Gorodkin's multi-class correlation coefficient:
///   (C*N - sum_k t_k*p_k) / sqrt((N^2 - sum p_k^2) * (N^2 - sum t_k^2))
/// with t = row sums, p = column sums, C = trace. Zero denominator flags
/// the value undefined.
MetricValue rk_coefficient(const ConfusionMatrix& cm);

} // namespace hexeval
