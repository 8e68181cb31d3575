#include "hexeval/metrics.hpp"

#include <array>
#include <cmath>

namespace hexeval {

namespace {

MetricValue ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) return {0.0, false};
    return {static_cast<double>(num) / static_cast<double>(den), true};
}

} // namespace

std::array<MetricValue, 6> hexagon_axes(const MetricHexagon& hex) {
    return {hex.rec, hex.prec, hex.spec, hex.acc, hex.mcc, hex.f1};
}

BinaryCounts binarize(const ConfusionMatrix& cm, int class_k) {
    const int k = cm.space().size();
    if (class_k < 0 || class_k >= k) {
        throw ValidationError("class index " + std::to_string(class_k) +
                              " out of range for binarize");
    }
    BinaryCounts counts;
    counts.tp = cm.counts()(class_k, class_k);
    counts.fn = cm.row_sums()(class_k) - counts.tp;
    counts.fp = cm.col_sums()(class_k) - counts.tp;
    counts.tn = cm.total() - counts.tp - counts.fp - counts.fn;
    return counts;
}

MetricHexagon binary_metrics(const BinaryCounts& c) {
    const std::int64_t n = c.total();
    if (n == 0) {
        throw ValidationError("empty input: all four binary counts are zero");
    }
    MetricHexagon hex;
    hex.rec = ratio(c.tp, c.tp + c.fn);
    hex.prec = ratio(c.tp, c.tp + c.fp);
    hex.spec = ratio(c.tn, c.tn + c.fp);
    hex.acc = ratio(c.tp + c.tn, n);

    if (hex.rec.defined && hex.prec.defined && hex.rec.value + hex.prec.value > 0.0) {
        hex.f1 = {2.0 * hex.prec.value * hex.rec.value / (hex.prec.value + hex.rec.value), true};
    } else {
        hex.f1 = {0.0, false};
    }

    // Counts stay exact integers until the final division; the products are
    // taken in double to avoid int64 overflow on large N.
    const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
    const double fn = static_cast<double>(c.fn), tn = static_cast<double>(c.tn);
    const double den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (den > 0.0) {
        hex.mcc = {(tp * tn - fp * fn) / std::sqrt(den), true};
    } else {
        hex.mcc = {0.0, false};
    }
    hex.rk = hex.mcc; // K=2 identity
    return hex;
}

MetricHexagon pooled_hexagon(const ConfusionMatrix& cm) {
    if (cm.total() == 0) {
        throw ValidationError("empty confusion matrix");
    }
    const std::int64_t k = cm.space().size();
    const std::int64_t n = cm.total();
    const std::int64_t c = cm.trace();
    BinaryCounts pooled;
    pooled.tp = c;
    pooled.fp = n - c;
    pooled.fn = n - c;
    pooled.tn = k * n - 2 * n + c;
    MetricHexagon hex = binary_metrics(pooled);
    hex.rk = rk_coefficient(cm);
    return hex;
}

MetricHexagon macro_hexagon(const ConfusionMatrix& cm) {
    if (cm.total() == 0) {
        throw ValidationError("empty confusion matrix");
    }
    const std::vector<ClassMetrics> table = per_class_table(cm);
    MetricHexagon mean;
    auto accumulate = [&](MetricValue MetricHexagon::* field) {
        MetricValue out{0.0, true};
        for (const ClassMetrics& row : table) {
            const MetricValue& v = row.metrics.*field;
            out.value += v.value;
            out.defined = out.defined && v.defined;
        }
        out.value /= static_cast<double>(table.size());
        return out;
    };
    mean.rec = accumulate(&MetricHexagon::rec);
    mean.prec = accumulate(&MetricHexagon::prec);
    mean.spec = accumulate(&MetricHexagon::spec);
    mean.acc = accumulate(&MetricHexagon::acc);
    mean.mcc = accumulate(&MetricHexagon::mcc);
    mean.f1 = accumulate(&MetricHexagon::f1);
    mean.rk = rk_coefficient(cm);
    return mean;
}

std::vector<ClassMetrics> per_class_table(const ConfusionMatrix& cm) {
    std::vector<ClassMetrics> table;
    table.reserve(static_cast<std::size_t>(cm.space().size()));
    for (int k = 0; k < cm.space().size(); ++k) {
        table.push_back({k, binary_metrics(binarize(cm, k))});
    }
    return table;
}

MetricValue rk_coefficient(const ConfusionMatrix& cm) {
    if (cm.total() == 0) {
        throw ValidationError("empty confusion matrix");
    }
    const double n = static_cast<double>(cm.total());
    const double c = static_cast<double>(cm.trace());
    const CountVector t = cm.row_sums();
    const CountVector p = cm.col_sums();
    double tp_dot = 0.0, t_sq = 0.0, p_sq = 0.0;
    for (int i = 0; i < t.size(); ++i) {
        const double ti = static_cast<double>(t(i));
        const double pi = static_cast<double>(p(i));
        tp_dot += ti * pi;
        t_sq += ti * ti;
        p_sq += pi * pi;
    }
    const double den = (n * n - p_sq) * (n * n - t_sq);
    if (den <= 0.0) return {0.0, false};
    return {(c * n - tp_dot) / std::sqrt(den), true};
}

} // namespace hexeval
