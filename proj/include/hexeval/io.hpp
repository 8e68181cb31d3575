#pragma once

#include <string>

#include "hexeval/core.hpp"
#include "hexeval/curves.hpp"
#include "hexeval/fusion.hpp"
#include "hexeval/logitboost.hpp"

namespace hexeval {

/// Up to 12 significant digits (%g); the serialization format of every
/// floating-point number the toolkit writes, chosen for reproducible diffs.
std::string format12(double value);

/// Nearest double to format12(value). Values are pre-rounded with this
/// before entering reports so that write -> read -> write is byte-stable.
double round12(double value);

/// Prediction CSV. Header: item_id,true_label,prob_<c1>,...,prob_<cK>[,predicted]
/// with the label space taken from the prob_ column order. Files without
/// probability columns must carry a `# classes=c1,c2,...` pragma line and a
/// predicted column instead. True and predicted labels are class names; an
/// empty predicted cell means absent.
PredictionSet read_predictions(const std::string& path);
void write_predictions(const std::string& path, const PredictionSet& preds);

/// Confusion-matrix file: a required `# rows=actual` orientation pragma
/// (`# rows=predicted` is accepted and transposed on read), then a header
/// row of class names and one labeled count row per class in header order.
ConfusionMatrix read_cm(const std::string& path);
void write_cm(const std::string& path, const ConfusionMatrix& cm);

/// ARFF subset: % comments, @relation, `@attribute <name> numeric` (real and
/// integer are synonyms) and exactly one nominal `@attribute <name> {a,b}`
/// which is the class; @data rows are dense CSV. Sparse rows, missing values
/// and other attribute kinds are rejected with the offending line.
FeatureDataset read_arff(const std::string& path);
/// Canonical form: numeric attributes f0..f{n-1}, class attribute last.
void write_arff(const std::string& path, const FeatureDataset& data,
                const std::string& relation);

/// Class-map JSON: {"source": [names], "target": [names],
/// "assignment": {"source-name": "target-name", ...}}.
ClassMap read_class_map(const std::string& path);
void write_class_map(const std::string& path, const ClassMap& map);

/// Fusion-head JSON (versioned): layer dimension chain, row-major weights,
/// hyperparameters, and the output class names.
std::string head_to_json(const FusionHead& head, const LabelSpace& outputs);
std::pair<FusionHead, LabelSpace> head_from_json(const std::string& text,
                                                 const std::string& origin);
void write_head(const std::string& path, const FusionHead& head, const LabelSpace& outputs);
std::pair<FusionHead, LabelSpace> read_head(const std::string& path);

/// Additive-model JSON (versioned): class names, feature count, stages.
std::string model_to_json(const AdditiveModel& model);
AdditiveModel model_from_json(const std::string& text, const std::string& origin);
void write_model(const std::string& path, const AdditiveModel& model);
AdditiveModel read_model(const std::string& path);

/// Curve CSV: `# baseline=<v>` and `# auc=<v>` pragmas, an x,y header naming
/// the axes, one point per line.
void write_curve_csv(const std::string& path, const Curve& curve, const std::string& x_axis,
                     const std::string& y_axis);

/// Whole-file helpers shared by the writers above; write_text writes
/// UTF-8/LF exactly as given.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

} // namespace hexeval
