#include "hexeval/core.hpp"

#include <cmath>
#include <unordered_set>

namespace hexeval {

namespace {
constexpr double kProbSumTol = 1e-6;
} // namespace

LabelSpace::LabelSpace(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() < 2) {
        throw ValidationError("label space needs at least 2 classes, got " +
                              std::to_string(names_.size()));
    }
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        if (names_[i].empty()) {
            throw ValidationError("label space contains an empty class name at index " +
                                  std::to_string(i));
        }
        if (!index_.emplace(names_[i], i).second) {
            throw ValidationError("duplicate class name '" + names_[i] + "' in label space");
        }
    }
}

const std::string& LabelSpace::name(int index) const {
    if (index < 0 || index >= size()) {
        throw ValidationError("class index " + std::to_string(index) +
                              " out of range for label space of size " + std::to_string(size()));
    }
    return names_[static_cast<std::size_t>(index)];
}

int LabelSpace::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
        throw ValidationError("unknown class name '" + name + "'");
    }
    return it->second;
}

std::optional<int> LabelSpace::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool operator==(const PredictionRecord& a, const PredictionRecord& b) {
    if (a.item_id != b.item_id || a.true_label != b.true_label ||
        a.predicted_label != b.predicted_label || a.probs.has_value() != b.probs.has_value()) {
        return false;
    }
    if (!a.probs) return true;
    return a.probs->size() == b.probs->size() &&
           (a.probs->array() == b.probs->array()).all();
}

int argmax(const Eigen::VectorXd& v) {
    int best = 0;
    for (int i = 1; i < v.size(); ++i) {
        if (v[i] > v[best]) best = i;
    }
    return best;
}

int resolved_label(const PredictionRecord& record) {
    if (record.predicted_label) return *record.predicted_label;
    if (record.probs) return argmax(*record.probs);
    throw ValidationError("malformed record '" + record.item_id +
                          "': has neither probabilities nor a predicted label");
}

namespace {

void validate_record(const PredictionRecord& record, const LabelSpace& space) {
    const int k = space.size();
    if (record.item_id.empty()) {
        throw ValidationError("record with empty item_id");
    }
    if (record.true_label < 0 || record.true_label >= k) {
        throw ValidationError("record '" + record.item_id + "': true label " +
                              std::to_string(record.true_label) + " out of range");
    }
    if (!record.probs && !record.predicted_label) {
        throw ValidationError("malformed record '" + record.item_id +
                              "': has neither probabilities nor a predicted label");
    }
    if (record.probs) {
        const Eigen::VectorXd& p = *record.probs;
        if (p.size() != k) {
            throw ValidationError("record '" + record.item_id + "': probability vector length " +
                                  std::to_string(p.size()) + " != " + std::to_string(k));
        }
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            if (!std::isfinite(p[i]) || p[i] < 0.0 || p[i] > 1.0) {
                throw ValidationError("record '" + record.item_id + "': probability " +
                                      std::to_string(p[i]) + " outside [0,1]");
            }
            sum += p[i];
        }
        if (std::abs(sum - 1.0) > kProbSumTol) {
            throw ValidationError("record '" + record.item_id + "': probabilities sum to " +
                                  std::to_string(sum) + ", expected 1 within 1e-6");
        }
        if (record.predicted_label && *record.predicted_label != argmax(p)) {
            throw ValidationError("record '" + record.item_id +
                                  "': predicted label disagrees with argmax of probabilities");
        }
    }
    if (record.predicted_label &&
        (*record.predicted_label < 0 || *record.predicted_label >= k)) {
        throw ValidationError("record '" + record.item_id + "': predicted label " +
                              std::to_string(*record.predicted_label) + " out of range");
    }
}

} // namespace

PredictionSet::PredictionSet(LabelSpace space, std::vector<PredictionRecord> records)
    : space_(std::move(space)), records_(std::move(records)) {
    std::unordered_set<std::string> ids;
    ids.reserve(records_.size());
    for (const PredictionRecord& record : records_) {
        validate_record(record, space_);
        if (!ids.insert(record.item_id).second) {
            throw ValidationError("duplicate item_id '" + record.item_id + "'");
        }
    }
}

ConfusionMatrix::ConfusionMatrix(LabelSpace space, CountMatrix counts)
    : space_(std::move(space)), counts_(std::move(counts)) {
    const int k = space_.size();
    if (counts_.rows() != k || counts_.cols() != k) {
        throw ValidationError("confusion matrix shape " + std::to_string(counts_.rows()) + "x" +
                              std::to_string(counts_.cols()) + " does not match label space of " +
                              std::to_string(k) + " classes");
    }
    for (int a = 0; a < k; ++a) {
        for (int p = 0; p < k; ++p) {
            if (counts_(a, p) < 0) {
                throw ValidationError("negative count at (" + space_.name(a) + ", " +
                                      space_.name(p) + ")");
            }
        }
    }
    total_ = counts_.sum();
}

ClassMap::ClassMap(LabelSpace source, LabelSpace target, std::vector<int> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
    if (static_cast<int>(assignment_.size()) != source_.size()) {
        throw ValidationError("class map assignment covers " +
                              std::to_string(assignment_.size()) + " of " +
                              std::to_string(source_.size()) + " source classes");
    }
    std::vector<bool> hit(static_cast<std::size_t>(target_.size()), false);
    for (int s = 0; s < source_.size(); ++s) {
        const int t = assignment_[static_cast<std::size_t>(s)];
        if (t < 0 || t >= target_.size()) {
            throw ValidationError("class map sends '" + source_.name(s) +
                                  "' to out-of-range target index " + std::to_string(t));
        }
        hit[static_cast<std::size_t>(t)] = true;
    }
    for (int t = 0; t < target_.size(); ++t) {
        if (!hit[static_cast<std::size_t>(t)]) {
            throw ValidationError("class map is not surjective: target '" + target_.name(t) +
                                  "' has no preimage");
        }
    }
}

ClassMap ClassMap::identity(const LabelSpace& space) {
    std::vector<int> assignment(static_cast<std::size_t>(space.size()));
    for (int i = 0; i < space.size(); ++i) assignment[static_cast<std::size_t>(i)] = i;
    return ClassMap(space, space, std::move(assignment));
}

ClassMap ClassMap::vs_rest(const LabelSpace& source, const std::string& positive) {
    const int pos = source.index_of(positive);
    LabelSpace target({positive, "non-" + positive});
    std::vector<int> assignment(static_cast<std::size_t>(source.size()), 1);
    assignment[static_cast<std::size_t>(pos)] = 0;
    return ClassMap(source, std::move(target), std::move(assignment));
}

int ClassMap::target_of(int source_index) const {
    if (source_index < 0 || source_index >= source_.size()) {
        throw ValidationError("source index " + std::to_string(source_index) +
                              " out of range for class map");
    }
    return assignment_[static_cast<std::size_t>(source_index)];
}

ConfusionMatrix build_cm(const PredictionSet& preds) {
    const int k = preds.space().size();
    CountMatrix counts = CountMatrix::Zero(k, k);
    for (const PredictionRecord& record : preds.records()) {
        counts(record.true_label, resolved_label(record)) += 1;
    }
    return ConfusionMatrix(preds.space(), std::move(counts));
}

ConfusionMatrix collapse(const ConfusionMatrix& cm, const ClassMap& map) {
    if (cm.space() != map.source()) {
        throw ValidationError("class map source does not match confusion matrix label space");
    }
    const int k = cm.space().size();
    CountMatrix counts = CountMatrix::Zero(map.target().size(), map.target().size());
    for (int a = 0; a < k; ++a) {
        for (int p = 0; p < k; ++p) {
            counts(map.target_of(a), map.target_of(p)) += cm.counts()(a, p);
        }
    }
    return ConfusionMatrix(map.target(), std::move(counts));
}

PredictionSet collapse_preds(const PredictionSet& preds, const ClassMap& map) {
    if (preds.space() != map.source()) {
        throw ValidationError("class map source does not match prediction label space");
    }
    std::vector<PredictionRecord> out;
    out.reserve(preds.records().size());
    for (const PredictionRecord& record : preds.records()) {
        if (!record.probs) {
            throw ValidationError("record '" + record.item_id +
                                  "': cannot collapse probabilities, none present");
        }
        Eigen::VectorXd probs = Eigen::VectorXd::Zero(map.target().size());
        for (int s = 0; s < map.source().size(); ++s) {
            probs[map.target_of(s)] += (*record.probs)[s];
        }
        PredictionRecord mapped;
        mapped.item_id = record.item_id;
        mapped.true_label = map.target_of(record.true_label);
        mapped.probs = std::move(probs);
        out.push_back(std::move(mapped));
    }
    return PredictionSet(map.target(), std::move(out));
}

PrevalenceReport dataset_summary(const PredictionSet& preds, int positive_target,
                                 const ClassMap& map) {
    if (preds.space() != map.source()) {
        throw ValidationError("class map source does not match prediction label space");
    }
    if (positive_target < 0 || positive_target >= map.target().size()) {
        throw ValidationError("positive class index " + std::to_string(positive_target) +
                              " out of range for target space");
    }
    PrevalenceReport report;
    for (const PredictionRecord& record : preds.records()) {
        if (map.target_of(record.true_label) == positive_target) {
            ++report.positives;
        } else {
            ++report.negatives;
        }
    }
    const std::int64_t n = report.positives + report.negatives;
    report.prevalence = n == 0 ? 0.0 : static_cast<double>(report.positives) / static_cast<double>(n);
    return report;
}

} // namespace hexeval
