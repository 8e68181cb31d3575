#pragma once

#include <vector>

#include "hexeval/core.hpp"

namespace hexeval {

/// One ranked item: the score assigned to the positive class and the truth.
struct ScoredItem {
    double score = 0.0;
    bool is_positive = false;
};

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
};

/// A ROC or PRC curve: points with non-decreasing x, the area under it, and
/// the chance baseline (0.5 for ROC, positive prevalence for PRC).
struct Curve {
    std::vector<CurvePoint> points;
    double auc = 0.0;
    double baseline = 0.0;
};

/// ROC curve over descending score thresholds, one step per distinct score.
/// Points are (FPR, TPR) from (0,0) to (1,1); AUC by trapezoid, which gives
/// tied scores exactly half credit. Requires at least one positive and one
/// negative item.
Curve roc(const std::vector<ScoredItem>& items);

/// PRC curve over the same thresholds. Points are (recall, precision); AUC
/// by step interpolation (precision held constant down to the previous
/// recall), never linear between points. Requires at least one positive.
Curve prc(const std::vector<ScoredItem>& items);

/// Score every record by its probability of `positive_class`. Requires
/// probability vectors on all records.
std::vector<ScoredItem> score_items(const PredictionSet& preds, int positive_class);

} // namespace hexeval
