#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hexeval/core.hpp"

namespace hexeval {

/// The probability vectors a set of base models produced for one item. The
/// fusion head consumes their concatenation; averaging requires equal lengths.
class FusionInput {
public:
    /// Requires at least two vectors, each a valid probability vector
    /// (entries in [0,1], sum 1 within 1e-6).
    explicit FusionInput(std::vector<Eigen::VectorXd> vectors);

    const std::vector<Eigen::VectorXd>& vectors() const { return vectors_; }
    int total_length() const;
    Eigen::VectorXd concatenated() const;

private:
    std::vector<Eigen::VectorXd> vectors_;
};

struct LossConfig {
    enum class Kind { plain, weighted };
    Kind kind = Kind::plain;
    /// Per-class positive factors; required iff kind == weighted.
    std::optional<Eigen::VectorXd> weights;
};

/// Elementwise mean of the base vectors. All vectors must share one length.
Eigen::VectorXd average_fuse(const FusionInput& input);

/// Numerically stable softmax (max subtraction).
Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

/// Cross-entropy from raw logits: -x[class] + log(sum_j exp(x[j])), the
/// log-sum-exp computed with max subtraction. The weighted kind multiplies
/// by weights[class].
double cross_entropy(const Eigen::VectorXd& logits, int class_index,
                     const LossConfig& cfg = {});

/// Inverse-frequency class weights w_c = N_total / (K * N_c); the mean weight
/// is 1 for balanced counts. Every count must be positive.
Eigen::VectorXd class_weights(const std::vector<std::int64_t>& counts);

struct FusionLayer {
    Eigen::MatrixXd weights; // out x in
    Eigen::VectorXd bias;    // out
};

struct FusionHyper {
    double learning_rate = 0.01;
    double momentum = 0.9;
    int epochs = 100;
    int batch_size = 1;
    std::uint32_t seed = 0;
};

/// MLP with rectified hidden layers and a linear (logit) output layer. The
/// default geometry mirrors the two-model setup: 32 inputs, hidden sizes 32
/// and 16, then K outputs.
struct FusionHead {
    std::vector<FusionLayer> layers;
    FusionHyper hyper;

    int input_size() const;
    int output_size() const;
};

/// Head with the given layer dimension chain (input, hidden..., output) and
/// weights drawn uniformly from +-1/sqrt(fan_in), seeded by hyper.seed.
FusionHead make_head(const std::vector<int>& dims, const FusionHyper& hyper = {});

Eigen::VectorXd head_forward(const FusionHead& head, const Eigen::VectorXd& input);
Eigen::VectorXd head_forward(const FusionHead& head, const FusionInput& input);

/// Loss gradient with respect to every layer's weights and biases for a
/// single example; shapes mirror head.layers.
std::vector<FusionLayer> head_gradients(const FusionHead& head, const Eigen::VectorXd& input,
                                        int label, const LossConfig& cfg = {});

struct FusionExample {
    FusionInput input;
    int label;
};

struct TrainResult {
    FusionHead head;
    /// Mean per-sample loss of each epoch, measured before each update.
    std::vector<double> epoch_loss;
};

/// SGD with momentum: v <- mu*v - eta*grad, w <- w + v. Examples are
/// reshuffled every epoch with the head's seed; given one seed the result is
/// bit-reproducible. Throws TrainingError when the loss turns non-finite.
TrainResult head_train(FusionHead head, const std::vector<FusionExample>& data,
                       const LossConfig& cfg = {});

/// Greedy diversity filter over (confusion matrix, predictions) pairs: the
/// first model is always kept; a later model is dropped only when some kept
/// model has both an identical CM diagonal and an identical set of correctly
/// classified item ids. Returns indices of the kept models.
std::vector<std::size_t> select_diverse(
    const std::vector<std::pair<ConfusionMatrix, PredictionSet>>& models);

/// Base-model outputs joined on item id, in the first base's item order.
struct FusedDataset {
    LabelSpace space;
    std::vector<std::string> ids;
    std::vector<int> labels;
    std::vector<FusionInput> inputs;
};

/// Joins >= 2 prediction sets item by item. All bases must share one label
/// space, cover exactly the same item ids, agree on every true label, and
/// carry probability vectors throughout.
FusedDataset join_probability_sets(const std::vector<PredictionSet>& bases);

} // namespace hexeval
