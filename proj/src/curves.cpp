#include "hexeval/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace hexeval {

namespace {

struct TotalCounts {
    std::int64_t positives = 0;
    std::int64_t negatives = 0;
};

TotalCounts validate_and_count(const std::vector<ScoredItem>& items) {
    TotalCounts totals;
    for (const ScoredItem& item : items) {
        if (!std::isfinite(item.score)) {
            throw ValidationError("non-finite score in curve input");
        }
        if (item.is_positive) {
            ++totals.positives;
        } else {
            ++totals.negatives;
        }
    }
    return totals;
}

/// Items sorted by score descending; equal scores form one threshold group.
std::vector<ScoredItem> sorted_desc(std::vector<ScoredItem> items) {
    std::stable_sort(items.begin(), items.end(),
                     [](const ScoredItem& a, const ScoredItem& b) { return a.score > b.score; });
    return items;
}

} // namespace

Curve roc(const std::vector<ScoredItem>& items) {
    const TotalCounts totals = validate_and_count(items);
    if (totals.positives == 0) {
        throw ValidationError("degenerate curve input: no positive items");
    }
    if (totals.negatives == 0) {
        throw ValidationError("degenerate curve input: no negative items");
    }
    const std::vector<ScoredItem> ranked = sorted_desc(items);

    Curve curve;
    curve.baseline = 0.5;
    curve.points.push_back({0.0, 0.0});
    std::int64_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < ranked.size()) {
        const double threshold = ranked[i].score;
        while (i < ranked.size() && ranked[i].score == threshold) {
            if (ranked[i].is_positive) {
                ++tp;
            } else {
                ++fp;
            }
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(totals.negatives),
                                static_cast<double>(tp) / static_cast<double>(totals.positives)});
    }
    for (std::size_t p = 1; p < curve.points.size(); ++p) {
        const CurvePoint& a = curve.points[p - 1];
        const CurvePoint& b = curve.points[p];
        curve.auc += (b.x - a.x) * (a.y + b.y) / 2.0;
    }
    return curve;
}

Curve prc(const std::vector<ScoredItem>& items) {
    const TotalCounts totals = validate_and_count(items);
    if (totals.positives == 0) {
        throw ValidationError("degenerate curve input: no positive items");
    }
    const std::vector<ScoredItem> ranked = sorted_desc(items);

    Curve curve;
    curve.baseline = static_cast<double>(totals.positives) /
                     static_cast<double>(totals.positives + totals.negatives);
    std::int64_t tp = 0, fp = 0;
    double prev_recall = 0.0;
    std::size_t i = 0;
    while (i < ranked.size()) {
        const double threshold = ranked[i].score;
        while (i < ranked.size() && ranked[i].score == threshold) {
            if (ranked[i].is_positive) {
                ++tp;
            } else {
                ++fp;
            }
            ++i;
        }
        const double recall = static_cast<double>(tp) / static_cast<double>(totals.positives);
        const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        curve.points.push_back({recall, precision});
        curve.auc += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    return curve;
}

std::vector<ScoredItem> score_items(const PredictionSet& preds, int positive_class) {
    if (positive_class < 0 || positive_class >= preds.space().size()) {
        throw ValidationError("positive class index " + std::to_string(positive_class) +
                              " out of range");
    }
    std::vector<ScoredItem> items;
    items.reserve(preds.records().size());
    for (const PredictionRecord& record : preds.records()) {
        if (!record.probs) {
            throw ValidationError("record '" + record.item_id +
                                  "': curves require probability vectors, none present");
        }
        items.push_back({(*record.probs)[positive_class], record.true_label == positive_class});
    }
    return items;
}

} // namespace hexeval
