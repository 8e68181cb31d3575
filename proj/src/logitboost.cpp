#include "hexeval/logitboost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hexeval/fusion.hpp"
#include "hexeval/rng.hpp"

namespace hexeval {

namespace {

constexpr double kMinWeight = 2.0 * std::numeric_limits<double>::epsilon();
constexpr double kMaxResponse = 4.0;

using Stage = std::vector<StageRegressor>;

/// Row-wise softmax of centered score rows.
Eigen::MatrixXd posteriors_of(const Eigen::MatrixXd& scores) {
    Eigen::MatrixXd p(scores.rows(), scores.cols());
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        p.row(i) = softmax(scores.row(i).transpose()).transpose();
    }
    return p;
}

/// Raw per-class stage scores for one row.
Eigen::VectorXd stage_raw(const Stage& stage, const Eigen::MatrixXd& x, Eigen::Index row) {
    Eigen::VectorXd g(static_cast<Eigen::Index>(stage.size()));
    for (std::size_t k = 0; k < stage.size(); ++k) {
        const StageRegressor& r = stage[k];
        g[static_cast<Eigen::Index>(k)] = r.slope * x(row, r.attribute) + r.intercept;
    }
    return g;
}

/// F += (K-1)/K * (g - mean(g)) per row; keeps every score row sum-zero.
void apply_stage(const Stage& stage, const Eigen::MatrixXd& x, Eigen::MatrixXd& scores) {
    const double k = static_cast<double>(stage.size());
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        Eigen::VectorXd g = stage_raw(stage, x, i);
        g.array() -= g.mean();
        scores.row(i) += ((k - 1.0) / k) * g.transpose();
    }
}

/// Best single-attribute weighted least-squares line by weighted SSE; ties
/// break toward the lowest attribute index.
StageRegressor best_line(const Eigen::MatrixXd& x, const Eigen::VectorXd& w,
                         const Eigen::VectorXd& z) {
    const double sw = w.sum();
    const double sz = w.dot(z);
    const double szz = w.dot(z.cwiseProduct(z));

    StageRegressor best;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int j = 0; j < x.cols(); ++j) {
        const Eigen::VectorXd xj = x.col(j);
        const double sx = w.dot(xj);
        const double sxx = w.dot(xj.cwiseProduct(xj));
        const double sxz = xj.cwiseProduct(w).dot(z);
        const double den = sw * sxx - sx * sx;
        double slope = 0.0;
        if (den > kMinWeight) {
            slope = (sw * sxz - sx * sz) / den;
        }
        const double intercept = (sz - slope * sx) / sw;
        const double sse = szz - 2.0 * slope * sxz - 2.0 * intercept * sz +
                           slope * slope * sxx + 2.0 * slope * intercept * sx +
                           intercept * intercept * sw;
        if (sse < best_sse) {
            best_sse = sse;
            best = {j, slope, intercept};
        }
    }
    return best;
}

/// One boosting iteration: per class, fit the working-response line from the
/// current posteriors.
Stage fit_stage(const Eigen::MatrixXd& x, const std::vector<int>& y,
                const Eigen::MatrixXd& scores, int n_classes) {
    const Eigen::MatrixXd p = posteriors_of(scores);
    const Eigen::Index n = x.rows();
    Stage stage;
    stage.reserve(static_cast<std::size_t>(n_classes));
    Eigen::VectorXd w(n), z(n);
    for (int k = 0; k < n_classes; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double pik = p(i, k);
            const double target = y[static_cast<std::size_t>(i)] == k ? 1.0 : 0.0;
            w[i] = std::max(pik * (1.0 - pik), kMinWeight);
            z[i] = std::clamp((target - pik) / w[i], -kMaxResponse, kMaxResponse);
        }
        stage.push_back(best_line(x, w, z));
    }
    return stage;
}

Eigen::MatrixXd feature_matrix(const FeatureDataset& data,
                               const std::vector<std::size_t>& rows) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), data.n_features());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        x.row(static_cast<Eigen::Index>(i)) = data.rows()[rows[i]].features.transpose();
    }
    return x;
}

std::vector<int> label_vector(const FeatureDataset& data, const std::vector<std::size_t>& rows) {
    std::vector<int> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) y[i] = data.rows()[rows[i]].label;
    return y;
}

void require_two_classes(const FeatureDataset& data) {
    std::vector<bool> present(static_cast<std::size_t>(data.space().size()), false);
    int distinct = 0;
    for (const FeatureRow& row : data.rows()) {
        if (!present[static_cast<std::size_t>(row.label)]) {
            present[static_cast<std::size_t>(row.label)] = true;
            ++distinct;
        }
    }
    if (distinct < 2) {
        throw ValidationError("training needs at least 2 classes present, got " +
                              std::to_string(distinct));
    }
}

} // namespace

bool operator==(const FeatureRow& a, const FeatureRow& b) {
    return a.label == b.label && a.features.size() == b.features.size() &&
           (a.features.array() == b.features.array()).all();
}

FeatureDataset::FeatureDataset(LabelSpace space, int n_features, std::vector<FeatureRow> rows)
    : space_(std::move(space)), n_features_(n_features), rows_(std::move(rows)) {
    if (n_features_ < 1) {
        throw ValidationError("feature dataset needs at least 1 feature");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].features.size() != n_features_) {
            throw ValidationError("row " + std::to_string(i) + " has " +
                                  std::to_string(rows_[i].features.size()) + " features, expected " +
                                  std::to_string(n_features_));
        }
        if (rows_[i].label < 0 || rows_[i].label >= space_.size()) {
            throw ValidationError("row " + std::to_string(i) + ": class index " +
                                  std::to_string(rows_[i].label) + " out of range");
        }
    }
}

AdditiveModel::AdditiveModel(LabelSpace space, int n_features,
                             std::vector<std::vector<StageRegressor>> stages)
    : space_(std::move(space)), n_features_(n_features), stages_(std::move(stages)) {
    if (n_features_ < 1) {
        throw ValidationError("additive model needs at least 1 feature");
    }
    for (const Stage& stage : stages_) {
        if (static_cast<int>(stage.size()) != space_.size()) {
            throw ValidationError("model stage holds " + std::to_string(stage.size()) +
                                  " regressors for " + std::to_string(space_.size()) + " classes");
        }
        for (const StageRegressor& r : stage) {
            if (r.attribute < 0 || r.attribute >= n_features_) {
                throw ValidationError("model stage references attribute " +
                                      std::to_string(r.attribute) + " of " +
                                      std::to_string(n_features_));
            }
        }
    }
}

Eigen::VectorXd AdditiveModel::scores(const Eigen::VectorXd& x) const {
    if (x.size() != n_features_) {
        throw ValidationError("model expects " + std::to_string(n_features_) +
                              " features, got " + std::to_string(x.size()));
    }
    const double k = static_cast<double>(space_.size());
    Eigen::VectorXd f = Eigen::VectorXd::Zero(space_.size());
    Eigen::VectorXd g(space_.size());
    for (const Stage& stage : stages_) {
        for (std::size_t m = 0; m < stage.size(); ++m) {
            const StageRegressor& r = stage[m];
            g[static_cast<Eigen::Index>(m)] = r.slope * x[r.attribute] + r.intercept;
        }
        g.array() -= g.mean();
        f += ((k - 1.0) / k) * g;
    }
    return f;
}

Eigen::VectorXd posterior(const AdditiveModel& model, const Eigen::VectorXd& x) {
    return softmax(model.scores(x));
}

AdditiveModel fit_fixed(const FeatureDataset& data, int n_iterations) {
    if (n_iterations < 1) {
        throw ValidationError("iteration count must be at least 1");
    }
    if (data.rows().empty()) {
        throw ValidationError("cannot fit on an empty dataset");
    }
    require_two_classes(data);

    std::vector<std::size_t> all(data.rows().size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const Eigen::MatrixXd x = feature_matrix(data, all);
    const std::vector<int> y = label_vector(data, all);
    const int k = data.space().size();

    Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(x.rows(), k);
    std::vector<Stage> stages;
    stages.reserve(static_cast<std::size_t>(n_iterations));
    for (int m = 0; m < n_iterations; ++m) {
        Stage stage = fit_stage(x, y, scores, k);
        apply_stage(stage, x, scores);
        stages.push_back(std::move(stage));
    }
    return AdditiveModel(data.space(), data.n_features(), std::move(stages));
}

FitResult fit(const FeatureDataset& data, int max_iterations, int folds, std::uint32_t seed) {
    if (max_iterations < 1) {
        throw ValidationError("iteration count must be at least 1");
    }
    if (folds < 2) {
        throw ValidationError("cross-validation needs at least 2 folds");
    }
    if (data.rows().empty()) {
        throw ValidationError("cannot fit on an empty dataset");
    }
    require_two_classes(data);

    const int k = data.space().size();

    // Stratified fold assignment: shuffle each class's rows, deal round-robin.
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < data.rows().size(); ++i) {
        by_class[static_cast<std::size_t>(data.rows()[i].label)].push_back(i);
    }
    std::mt19937 rng(seed);
    std::vector<int> fold_of(data.rows().size(), 0);
    for (std::vector<std::size_t>& group : by_class) {
        if (group.empty()) continue;
        if (static_cast<int>(group.size()) < folds) {
            throw ValidationError("cannot stratify " + std::to_string(folds) +
                                  " folds: smallest class has only " +
                                  std::to_string(group.size()) + " rows");
        }
        portable_shuffle(group, rng);
        for (std::size_t i = 0; i < group.size(); ++i) {
            fold_of[group[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
        }
    }

    // Per candidate iteration count, held-out misclassifications summed over folds.
    std::vector<std::int64_t> errors(static_cast<std::size_t>(max_iterations), 0);
    for (int f = 0; f < folds; ++f) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t i = 0; i < data.rows().size(); ++i) {
            (fold_of[i] == f ? test_rows : train_rows).push_back(i);
        }
        const Eigen::MatrixXd x_train = feature_matrix(data, train_rows);
        const std::vector<int> y_train = label_vector(data, train_rows);
        const Eigen::MatrixXd x_test = feature_matrix(data, test_rows);
        const std::vector<int> y_test = label_vector(data, test_rows);

        Eigen::MatrixXd f_train = Eigen::MatrixXd::Zero(x_train.rows(), k);
        Eigen::MatrixXd f_test = Eigen::MatrixXd::Zero(x_test.rows(), k);
        for (int m = 0; m < max_iterations; ++m) {
            const Stage stage = fit_stage(x_train, y_train, f_train, k);
            apply_stage(stage, x_train, f_train);
            apply_stage(stage, x_test, f_test);
            for (Eigen::Index i = 0; i < f_test.rows(); ++i) {
                Eigen::Index predicted = 0;
                f_test.row(i).maxCoeff(&predicted);
                if (static_cast<int>(predicted) != y_test[static_cast<std::size_t>(i)]) {
                    ++errors[static_cast<std::size_t>(m)];
                }
            }
        }
    }

    FitResult result{AdditiveModel(data.space(), data.n_features(), {}), {}, {}, 0};
    result.cv_error.reserve(static_cast<std::size_t>(max_iterations));
    std::int64_t best = errors[0];
    int chosen = 1;
    for (int m = 0; m < max_iterations; ++m) {
        result.cv_error.push_back(static_cast<double>(errors[static_cast<std::size_t>(m)]) /
                                  static_cast<double>(data.rows().size()));
        if (errors[static_cast<std::size_t>(m)] < best) {
            best = errors[static_cast<std::size_t>(m)];
            chosen = m + 1;
        }
    }
    result.chosen_iterations = chosen;

    // Refit on the full data with the chosen count, tracing training log-loss.
    std::vector<std::size_t> all(data.rows().size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const Eigen::MatrixXd x = feature_matrix(data, all);
    const std::vector<int> y = label_vector(data, all);
    Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(x.rows(), k);
    std::vector<Stage> stages;
    stages.reserve(static_cast<std::size_t>(chosen));
    result.train_log_loss.reserve(static_cast<std::size_t>(chosen));
    for (int m = 0; m < chosen; ++m) {
        Stage stage = fit_stage(x, y, scores, k);
        apply_stage(stage, x, scores);
        stages.push_back(std::move(stage));
        const Eigen::MatrixXd p = posteriors_of(scores);
        double loss = 0.0;
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            loss -= std::log(p(i, y[static_cast<std::size_t>(i)]));
        }
        result.train_log_loss.push_back(loss / static_cast<double>(p.rows()));
    }
    result.model = AdditiveModel(data.space(), data.n_features(), std::move(stages));
    return result;
}

PredictionSet predict_set(const AdditiveModel& model, const FeatureDataset& data) {
    if (model.space() != data.space()) {
        throw ValidationError("model and dataset label spaces differ");
    }
    std::vector<PredictionRecord> records;
    records.reserve(data.rows().size());
    for (std::size_t i = 0; i < data.rows().size(); ++i) {
        PredictionRecord record;
        record.item_id = "row_" + std::to_string(i);
        record.true_label = data.rows()[i].label;
        record.probs = posterior(model, data.rows()[i].features);
        records.push_back(std::move(record));
    }
    return PredictionSet(data.space(), std::move(records));
}

} // namespace hexeval
