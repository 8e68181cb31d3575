#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hexeval/errors.hpp"

namespace hexeval {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Ordered set of distinct class names; index <-> name is a bijection.
class LabelSpace {
public:
    /// Requires at least two unique, non-empty names.
    explicit LabelSpace(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int index) const;

    /// Index of `name`, or throws ValidationError if absent.
    int index_of(const std::string& name) const;
    std::optional<int> find(const std::string& name) const;

    bool operator==(const LabelSpace& other) const { return names_ == other.names_; }
    bool operator!=(const LabelSpace& other) const { return !(*this == other); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

/// One evaluated item: identity, ground truth, and model output as a
/// probability vector and/or a hard predicted label.
struct PredictionRecord {
    std::string item_id;
    int true_label = -1;
    std::optional<Eigen::VectorXd> probs;
    std::optional<int> predicted_label;
};

bool operator==(const PredictionRecord& a, const PredictionRecord& b);

/// Lowest-index argmax, the toolkit's deterministic tie-break.
int argmax(const Eigen::VectorXd& v);

/// Predicted class of a record: explicit label if set, otherwise argmax of
/// the probability vector. Throws ValidationError (naming the item) when
/// neither is available.
int resolved_label(const PredictionRecord& record);

/// Records over a shared label space. Construction validates every record:
/// unique item ids, labels in range, probability vectors of length K with
/// entries in [0,1] summing to 1 within 1e-6, and explicit predicted labels
/// consistent with argmax when probabilities are also present.
class PredictionSet {
public:
    PredictionSet(LabelSpace space, std::vector<PredictionRecord> records);

    const LabelSpace& space() const { return space_; }
    const std::vector<PredictionRecord>& records() const { return records_; }
    std::int64_t size() const { return static_cast<std::int64_t>(records_.size()); }

    bool operator==(const PredictionSet& other) const {
        return space_ == other.space_ && records_ == other.records_;
    }

private:
    LabelSpace space_;
    std::vector<PredictionRecord> records_;
};

/// K x K counts; rows are actual classes, columns are predicted classes.
/// This orientation is fixed toolkit-wide and stated in every emitted file.
class ConfusionMatrix {
public:
    ConfusionMatrix(LabelSpace space, CountMatrix counts);

    const LabelSpace& space() const { return space_; }
    const CountMatrix& counts() const { return counts_; }
    std::int64_t total() const { return total_; }
    std::int64_t trace() const { return counts_.trace(); }
    CountVector row_sums() const { return counts_.rowwise().sum(); }
    CountVector col_sums() const { return counts_.colwise().sum().transpose(); }

    bool operator==(const ConfusionMatrix& other) const {
        return space_ == other.space_ && (counts_.array() == other.counts_.array()).all();
    }

private:
    LabelSpace space_;
    CountMatrix counts_;
    std::int64_t total_ = 0;
};

/// Surjective map from a source label space onto a coarser target space.
class ClassMap {
public:
    /// `assignment[s]` is the target index of source class s. Every target
    /// class must have at least one preimage.
    ClassMap(LabelSpace source, LabelSpace target, std::vector<int> assignment);

    static ClassMap identity(const LabelSpace& space);

    /// One-vs-rest map: `positive` keeps its name, everything else collapses
    /// into a single "non-<positive>" class.
    static ClassMap vs_rest(const LabelSpace& source, const std::string& positive);

    const LabelSpace& source() const { return source_; }
    const LabelSpace& target() const { return target_; }
    int target_of(int source_index) const;
    const std::vector<int>& assignment() const { return assignment_; }

private:
    LabelSpace source_;
    LabelSpace target_;
    std::vector<int> assignment_;
};

/// Count (actual, predicted) pairs over the set's label space. Every record
/// must resolve to a predicted label.
ConfusionMatrix build_cm(const PredictionSet& preds);

/// Sum confusion counts into the map's target space. Totals are preserved.
ConfusionMatrix collapse(const ConfusionMatrix& cm, const ClassMap& map);

/// Sum each record's probability mass into the target space. Requires
/// probabilities on every record; explicit predicted labels are dropped and
/// re-derived by argmax downstream.
PredictionSet collapse_preds(const PredictionSet& preds, const ClassMap& map);

struct PrevalenceReport {
    std::int64_t positives = 0;
    std::int64_t negatives = 0;
    double prevalence = 0.0;
};

/// Count true labels mapping to `positive_target` vs the rest.
PrevalenceReport dataset_summary(const PredictionSet& preds, int positive_target,
                                 const ClassMap& map);

} // namespace hexeval
