#include "hexeval/fusion.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "hexeval/rng.hpp"

namespace hexeval {

namespace {

constexpr double kProbSumTol = 1e-6;

void validate_prob_vector(const Eigen::VectorXd& v, std::size_t position) {
    double sum = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || v[i] < 0.0 || v[i] > 1.0) {
            throw ValidationError("fusion input vector " + std::to_string(position) +
                                  ": entry " + std::to_string(v[i]) + " outside [0,1]");
        }
        sum += v[i];
    }
    if (std::abs(sum - 1.0) > kProbSumTol) {
        throw ValidationError("fusion input vector " + std::to_string(position) +
                              ": entries sum to " + std::to_string(sum) +
                              ", expected 1 within 1e-6");
    }
}

} // namespace

FusionInput::FusionInput(std::vector<Eigen::VectorXd> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.size() < 2) {
        throw ValidationError("fusion input needs at least 2 base vectors, got " +
                              std::to_string(vectors_.size()));
    }
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        validate_prob_vector(vectors_[i], i);
    }
}

int FusionInput::total_length() const {
    int length = 0;
    for (const Eigen::VectorXd& v : vectors_) length += static_cast<int>(v.size());
    return length;
}

Eigen::VectorXd FusionInput::concatenated() const {
    Eigen::VectorXd out(total_length());
    int offset = 0;
    for (const Eigen::VectorXd& v : vectors_) {
        out.segment(offset, v.size()) = v;
        offset += static_cast<int>(v.size());
    }
    return out;
}

Eigen::VectorXd average_fuse(const FusionInput& input) {
    const std::vector<Eigen::VectorXd>& vs = input.vectors();
    const Eigen::Index length = vs[0].size();
    for (std::size_t i = 1; i < vs.size(); ++i) {
        if (vs[i].size() != length) {
            throw ValidationError("cannot average probability vectors of lengths " +
                                  std::to_string(length) + " and " +
                                  std::to_string(vs[i].size()));
        }
    }
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(length);
    for (const Eigen::VectorXd& v : vs) mean += v;
    mean /= static_cast<double>(vs.size());
    return mean;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
    const double max = logits.maxCoeff();
    Eigen::VectorXd out = (logits.array() - max).exp();
    out /= out.sum();
    return out;
}

double cross_entropy(const Eigen::VectorXd& logits, int class_index, const LossConfig& cfg) {
    if (class_index < 0 || class_index >= logits.size()) {
        throw ValidationError("loss class index " + std::to_string(class_index) +
                              " out of range for " + std::to_string(logits.size()) + " logits");
    }
    const double max = logits.maxCoeff();
    const double lse = max + std::log((logits.array() - max).exp().sum());
    double loss = lse - logits[class_index];
    if (cfg.kind == LossConfig::Kind::weighted) {
        if (!cfg.weights || cfg.weights->size() != logits.size()) {
            throw ValidationError("weighted loss requires one weight per class");
        }
        if ((cfg.weights->array() <= 0.0).any()) {
            throw ValidationError("class weights must be positive");
        }
        loss *= (*cfg.weights)[class_index];
    }
    return loss;
}

Eigen::VectorXd class_weights(const std::vector<std::int64_t>& counts) {
    if (counts.empty()) {
        throw ValidationError("class weights need at least one class count");
    }
    std::int64_t total = 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] <= 0) {
            throw ValidationError("class " + std::to_string(c) +
                                  " has no examples: fill the class or exclude it "
                                  "before weighting");
        }
        total += counts[c];
    }
    const double k = static_cast<double>(counts.size());
    Eigen::VectorXd weights(static_cast<Eigen::Index>(counts.size()));
    for (std::size_t c = 0; c < counts.size(); ++c) {
        weights[static_cast<Eigen::Index>(c)] =
            static_cast<double>(total) / (k * static_cast<double>(counts[c]));
    }
    return weights;
}

int FusionHead::input_size() const {
    if (layers.empty()) throw ValidationError("fusion head has no layers");
    return static_cast<int>(layers.front().weights.cols());
}

int FusionHead::output_size() const {
    if (layers.empty()) throw ValidationError("fusion head has no layers");
    return static_cast<int>(layers.back().weights.rows());
}

FusionHead make_head(const std::vector<int>& dims, const FusionHyper& hyper) {
    if (dims.size() < 2) {
        throw ValidationError("head dimension chain needs at least input and output sizes");
    }
    for (int d : dims) {
        if (d <= 0) throw ValidationError("head layer size must be positive");
    }
    FusionHead head;
    head.hyper = hyper;
    std::mt19937 rng(hyper.seed);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const int fan_in = dims[l];
        const int fan_out = dims[l + 1];
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        FusionLayer layer;
        layer.weights.resize(fan_out, fan_in);
        layer.bias = Eigen::VectorXd::Zero(fan_out);
        for (int r = 0; r < fan_out; ++r) {
            for (int c = 0; c < fan_in; ++c) {
                layer.weights(r, c) = (2.0 * unit_draw(rng) - 1.0) * bound;
            }
        }
        head.layers.push_back(std::move(layer));
    }
    return head;
}

namespace {

struct ForwardTrace {
    /// activations[l] feeds layer l; activations.back() is the logits.
    std::vector<Eigen::VectorXd> activations;
    /// pre_relu[l] is layer l's affine output before rectification (hidden
    /// layers only; the last layer's logits stay linear).
    std::vector<Eigen::VectorXd> pre_relu;
};

ForwardTrace forward_trace(const FusionHead& head, const Eigen::VectorXd& input) {
    if (head.layers.empty()) throw ValidationError("fusion head has no layers");
    if (input.size() != head.layers.front().weights.cols()) {
        throw ValidationError("head expects input of length " +
                              std::to_string(head.layers.front().weights.cols()) + ", got " +
                              std::to_string(input.size()));
    }
    ForwardTrace trace;
    trace.activations.push_back(input);
    for (std::size_t l = 0; l < head.layers.size(); ++l) {
        const FusionLayer& layer = head.layers[l];
        if (layer.weights.cols() != trace.activations.back().size()) {
            throw ValidationError("head layer " + std::to_string(l) + " expects input of length " +
                                  std::to_string(layer.weights.cols()));
        }
        Eigen::VectorXd z = layer.weights * trace.activations.back() + layer.bias;
        if (l + 1 < head.layers.size()) {
            trace.pre_relu.push_back(z);
            trace.activations.push_back(z.cwiseMax(0.0));
        } else {
            trace.activations.push_back(std::move(z));
        }
    }
    return trace;
}

std::vector<FusionLayer> gradients_from_trace(const FusionHead& head, const ForwardTrace& trace,
                                              int label, const LossConfig& cfg) {
    const Eigen::VectorXd& logits = trace.activations.back();
    if (label < 0 || label >= logits.size()) {
        throw ValidationError("training label " + std::to_string(label) + " out of range for " +
                              std::to_string(logits.size()) + " outputs");
    }
    Eigen::VectorXd delta = softmax(logits);
    delta[label] -= 1.0;
    if (cfg.kind == LossConfig::Kind::weighted) {
        if (!cfg.weights || cfg.weights->size() != logits.size()) {
            throw ValidationError("weighted loss requires one weight per class");
        }
        delta *= (*cfg.weights)[label];
    }

    std::vector<FusionLayer> grads(head.layers.size());
    for (std::size_t l = head.layers.size(); l-- > 0;) {
        grads[l].weights = delta * trace.activations[l].transpose();
        grads[l].bias = delta;
        if (l > 0) {
            delta = head.layers[l].weights.transpose() * delta;
            delta = (trace.pre_relu[l - 1].array() > 0.0).select(delta, 0.0);
        }
    }
    return grads;
}

} // namespace

Eigen::VectorXd head_forward(const FusionHead& head, const Eigen::VectorXd& input) {
    return forward_trace(head, input).activations.back();
}

Eigen::VectorXd head_forward(const FusionHead& head, const FusionInput& input) {
    return head_forward(head, input.concatenated());
}

std::vector<FusionLayer> head_gradients(const FusionHead& head, const Eigen::VectorXd& input,
                                        int label, const LossConfig& cfg) {
    return gradients_from_trace(head, forward_trace(head, input), label, cfg);
}

TrainResult head_train(FusionHead head, const std::vector<FusionExample>& data,
                       const LossConfig& cfg) {
    if (data.empty()) {
        throw ValidationError("training needs at least one example");
    }
    const FusionHyper& hp = head.hyper;
    if (hp.epochs < 0 || hp.batch_size < 1) {
        throw ValidationError("invalid training hyperparameters");
    }

    std::vector<Eigen::VectorXd> inputs;
    inputs.reserve(data.size());
    for (const FusionExample& ex : data) inputs.push_back(ex.input.concatenated());

    std::vector<FusionLayer> velocity(head.layers.size());
    for (std::size_t l = 0; l < head.layers.size(); ++l) {
        velocity[l].weights = Eigen::MatrixXd::Zero(head.layers[l].weights.rows(),
                                                    head.layers[l].weights.cols());
        velocity[l].bias = Eigen::VectorXd::Zero(head.layers[l].bias.size());
    }

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937 rng(hp.seed);

    TrainResult result;
    result.epoch_loss.reserve(static_cast<std::size_t>(hp.epochs));
    for (int epoch = 0; epoch < hp.epochs; ++epoch) {
        portable_shuffle(order, rng);
        double loss_sum = 0.0;
        std::size_t cursor = 0;
        while (cursor < order.size()) {
            const std::size_t batch_end =
                std::min(cursor + static_cast<std::size_t>(hp.batch_size), order.size());
            std::vector<FusionLayer> batch_grad;
            for (std::size_t b = cursor; b < batch_end; ++b) {
                const std::size_t i = order[b];
                const ForwardTrace trace = forward_trace(head, inputs[i]);
                const double loss =
                    cross_entropy(trace.activations.back(), data[i].label, cfg);
                if (!std::isfinite(loss)) {
                    throw TrainingError("training diverged at epoch " + std::to_string(epoch) +
                                        " (learning rate " + std::to_string(hp.learning_rate) +
                                        ")");
                }
                loss_sum += loss;
                std::vector<FusionLayer> grad =
                    gradients_from_trace(head, trace, data[i].label, cfg);
                if (batch_grad.empty()) {
                    batch_grad = std::move(grad);
                } else {
                    for (std::size_t l = 0; l < batch_grad.size(); ++l) {
                        batch_grad[l].weights += grad[l].weights;
                        batch_grad[l].bias += grad[l].bias;
                    }
                }
            }
            const double scale = 1.0 / static_cast<double>(batch_end - cursor);
            for (std::size_t l = 0; l < head.layers.size(); ++l) {
                velocity[l].weights = hp.momentum * velocity[l].weights -
                                      hp.learning_rate * scale * batch_grad[l].weights;
                velocity[l].bias = hp.momentum * velocity[l].bias -
                                   hp.learning_rate * scale * batch_grad[l].bias;
                head.layers[l].weights += velocity[l].weights;
                head.layers[l].bias += velocity[l].bias;
            }
            cursor = batch_end;
        }
        result.epoch_loss.push_back(loss_sum / static_cast<double>(data.size()));
    }
    result.head = std::move(head);
    return result;
}

std::vector<std::size_t> select_diverse(
    const std::vector<std::pair<ConfusionMatrix, PredictionSet>>& models) {
    if (models.empty()) return {};
    const LabelSpace& space = models[0].first.space();

    struct Signature {
        CountVector diagonal;
        std::set<std::string> correct;
    };
    std::vector<Signature> signatures;
    signatures.reserve(models.size());
    for (const auto& [cm, preds] : models) {
        if (cm.space() != space || preds.space() != space) {
            throw ValidationError("diversity selection requires one shared label space");
        }
        Signature sig;
        sig.diagonal = cm.counts().diagonal();
        for (const PredictionRecord& record : preds.records()) {
            if (resolved_label(record) == record.true_label) {
                sig.correct.insert(record.item_id);
            }
        }
        signatures.push_back(std::move(sig));
    }

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < models.size(); ++i) {
        bool duplicate = false;
        for (std::size_t j : kept) {
            if ((signatures[i].diagonal.array() == signatures[j].diagonal.array()).all() &&
                signatures[i].correct == signatures[j].correct) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) kept.push_back(i);
    }
    return kept;
}

FusedDataset join_probability_sets(const std::vector<PredictionSet>& bases) {
    if (bases.size() < 2) {
        throw ValidationError("fusion needs at least 2 base models, got " +
                              std::to_string(bases.size()));
    }
    const PredictionSet& first = bases[0];
    for (const PredictionSet& base : bases) {
        if (base.space() != first.space()) {
            throw ValidationError("base label spaces differ");
        }
    }

    std::vector<std::map<std::string, const PredictionRecord*>> by_id;
    for (std::size_t b = 1; b < bases.size(); ++b) {
        std::map<std::string, const PredictionRecord*> index;
        for (const PredictionRecord& record : bases[b].records()) {
            index[record.item_id] = &record;
        }
        by_id.push_back(std::move(index));
    }

    FusedDataset data{first.space(), {}, {}, {}};
    for (const PredictionRecord& lead : first.records()) {
        std::vector<const PredictionRecord*> records{&lead};
        for (std::size_t b = 1; b < bases.size(); ++b) {
            const auto it = by_id[b - 1].find(lead.item_id);
            if (it == by_id[b - 1].end()) {
                throw ValidationError("item '" + lead.item_id + "' missing from base " +
                                      std::to_string(b));
            }
            records.push_back(it->second);
        }
        std::vector<Eigen::VectorXd> vectors;
        vectors.reserve(records.size());
        for (std::size_t b = 0; b < records.size(); ++b) {
            if (records[b]->true_label != lead.true_label) {
                throw ValidationError("true labels disagree for item '" + lead.item_id + "'");
            }
            if (!records[b]->probs) {
                throw ValidationError("item '" + lead.item_id + "' in base " +
                                      std::to_string(b) + " has no probabilities");
            }
            vectors.push_back(*records[b]->probs);
        }
        data.ids.push_back(lead.item_id);
        data.labels.push_back(lead.true_label);
        data.inputs.emplace_back(std::move(vectors));
    }
    for (std::size_t b = 1; b < bases.size(); ++b) {
        if (by_id[b - 1].size() != data.ids.size()) {
            throw ValidationError("base " + std::to_string(b) +
                                  " holds items missing from base 0");
        }
    }
    return data;
}

} // namespace hexeval
