#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "hexeval/core.hpp"

namespace hexeval {

struct FeatureRow {
    Eigen::VectorXd features;
    int label = -1;
};

bool operator==(const FeatureRow& a, const FeatureRow& b);

/// Rows of real-valued features with a class label each.
class FeatureDataset {
public:
    /// Validates row lengths and label ranges.
    FeatureDataset(LabelSpace space, int n_features, std::vector<FeatureRow> rows);

    const LabelSpace& space() const { return space_; }
    int n_features() const { return n_features_; }
    const std::vector<FeatureRow>& rows() const { return rows_; }
    std::int64_t size() const { return static_cast<std::int64_t>(rows_.size()); }

    bool operator==(const FeatureDataset& other) const {
        return space_ == other.space_ && n_features_ == other.n_features_ &&
               rows_ == other.rows_;
    }

private:
    LabelSpace space_;
    int n_features_;
    std::vector<FeatureRow> rows_;
};

/// One weighted least-squares line on a single attribute.
struct StageRegressor {
    int attribute = 0;
    double slope = 0.0;
    double intercept = 0.0;

    bool operator==(const StageRegressor&) const = default;
};

/// Stagewise additive logistic model. Every stage stores one raw regressor
/// per class; evaluation applies the (K-1)/K mean-centering update, so the
/// class scores of any input sum to zero and the posterior is their softmax.
class AdditiveModel {
public:
    AdditiveModel(LabelSpace space, int n_features,
                  std::vector<std::vector<StageRegressor>> stages);

    const LabelSpace& space() const { return space_; }
    int n_features() const { return n_features_; }
    const std::vector<std::vector<StageRegressor>>& stages() const { return stages_; }
    int n_iterations() const { return static_cast<int>(stages_.size()); }

    /// Centered class scores F(x); sums to zero over classes.
    Eigen::VectorXd scores(const Eigen::VectorXd& x) const;

private:
    LabelSpace space_;
    int n_features_;
    std::vector<std::vector<StageRegressor>> stages_;
};

/// softmax(model.scores(x)).
Eigen::VectorXd posterior(const AdditiveModel& model, const Eigen::VectorXd& x);

struct FitResult {
    AdditiveModel model;
    /// Mean multiclass log-loss on the training data after each iteration of
    /// the final full-data fit.
    std::vector<double> train_log_loss;
    /// Cross-validated misclassification rate per candidate iteration count
    /// (index m-1 holds the rate for m iterations).
    std::vector<double> cv_error;
    int chosen_iterations = 0;
};

/// LogitBoost for a fixed number of iterations on the full data, no
/// cross-validation. Per iteration and class: working response
/// z = (y* - p)/w clipped to +-4 with w = p(1-p) floored at twice machine
/// epsilon, then the single-attribute weighted least-squares line with the
/// lowest weighted SSE.
AdditiveModel fit_fixed(const FeatureDataset& data, int n_iterations);

/// Chooses the iteration count by stratified k-fold cross-validation (first
/// count attaining the minimum summed error), then refits on the full data.
/// Fold assignment is the only randomness.
FitResult fit(const FeatureDataset& data, int max_iterations, int folds, std::uint32_t seed);

/// Posterior per row; item ids are "row_0", "row_1", ...
PredictionSet predict_set(const AdditiveModel& model, const FeatureDataset& data);

} // namespace hexeval
