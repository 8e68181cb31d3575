// hexeval command-line front end. Every subcommand maps onto the library
// one-to-one; this file only parses flags, wires inputs together, and prints.

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexeval/curves.hpp"
#include "hexeval/fusion.hpp"
#include "hexeval/harness.hpp"
#include "hexeval/io.hpp"
#include "hexeval/logitboost.hpp"
#include "hexeval/metrics.hpp"
#include "hexeval/svg.hpp"

namespace {

using hexeval::MetricHexagon;
using hexeval::MetricValue;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kMetricNames[7] = {"rec", "prec", "spec", "acc", "mcc", "f1", "rk"};

std::array<const MetricValue*, 7> metric_fields(const MetricHexagon& hex) {
    return {&hex.rec, &hex.prec, &hex.spec, &hex.acc, &hex.mcc, &hex.f1, &hex.rk};
}

std::string value_text(const MetricValue& value) {
    return value.defined ? hexeval::format12(hexeval::round12(value.value))
                         : std::string("undefined");
}

void print_hexagon(const MetricHexagon& hex, const std::string& prefix = "") {
    const auto fields = metric_fields(hex);
    for (std::size_t i = 0; i < 7; ++i) {
        std::printf("%s%s %s\n", prefix.c_str(), kMetricNames[i],
                    value_text(*fields[i]).c_str());
    }
}

void put_hexagon(ordered_json& j, const MetricHexagon& hex) {
    const auto fields = metric_fields(hex);
    std::vector<std::string> undefined;
    for (std::size_t i = 0; i < 7; ++i) {
        j[kMetricNames[i]] = hexeval::round12(fields[i]->value);
        if (!fields[i]->defined) undefined.emplace_back(kMetricNames[i]);
    }
    j["undefined"] = undefined;
}

ordered_json per_class_json(const hexeval::ConfusionMatrix& cm) {
    ordered_json rows = ordered_json::array();
    for (const hexeval::ClassMetrics& entry : hexeval::per_class_table(cm)) {
        ordered_json row;
        row["class"] = cm.space().name(entry.class_index);
        put_hexagon(row, entry.metrics);
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Hexagon for an evaluated matrix: one-vs-rest of `positive` when set
/// (keeping the full-matrix Rk), otherwise pooled or macro aggregation.
MetricHexagon evaluate_hexagon(const hexeval::ConfusionMatrix& cm, const std::string& positive,
                               bool macro) {
    if (!positive.empty()) {
        MetricHexagon hex = hexeval::binary_metrics(
            hexeval::binarize(cm, cm.space().index_of(positive)));
        hex.rk = hexeval::rk_coefficient(cm);
        return hex;
    }
    return macro ? hexeval::macro_hexagon(cm) : hexeval::pooled_hexagon(cm);
}

hexeval::FusedDataset join_base_files(const std::vector<std::string>& paths) {
    std::vector<hexeval::PredictionSet> bases;
    bases.reserve(paths.size());
    for (const std::string& path : paths) bases.push_back(hexeval::read_predictions(path));
    return hexeval::join_probability_sets(bases);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classifier evaluation and late-fusion toolkit"};
    app.require_subcommand(1);
    bool json_errors = false;
    app.add_flag("--json-errors", json_errors,
                 "Report errors as single-line JSON on standard error");

    // ---- metrics -----------------------------------------------------------
    auto* metrics_cmd =
        app.add_subcommand("metrics", "Hexagon metrics from a confusion matrix or predictions");
    struct {
        std::string cm, preds, map, positive, out;
        bool macro = false, per_class = false;
    } metrics_args;
    auto* metrics_cm = metrics_cmd->add_option("--cm", metrics_args.cm, "Confusion-matrix file");
    auto* metrics_preds =
        metrics_cmd->add_option("--preds", metrics_args.preds, "Prediction CSV file");
    metrics_cm->excludes(metrics_preds);
    metrics_cmd->add_option("--map", metrics_args.map, "Class-map JSON applied before scoring");
    metrics_cmd->add_option("--positive", metrics_args.positive,
                            "Score this class one-vs-rest instead of pooling");
    metrics_cmd->add_flag("--macro", metrics_args.macro,
                          "Macro (per-class mean) aggregation instead of pooled");
    metrics_cmd->add_flag("--per-class", metrics_args.per_class, "Also print per-class rows");
    metrics_cmd->add_option("--out", metrics_args.out, "Write the full result as JSON");
    metrics_cmd->callback([&] {
        if (metrics_args.cm.empty() == metrics_args.preds.empty()) {
            throw hexeval::ValidationError("metrics needs exactly one of --cm or --preds");
        }
        hexeval::ConfusionMatrix cm =
            metrics_args.cm.empty()
                ? hexeval::build_cm(hexeval::read_predictions(metrics_args.preds))
                : hexeval::read_cm(metrics_args.cm);
        if (!metrics_args.map.empty()) {
            cm = hexeval::collapse(cm, hexeval::read_class_map(metrics_args.map));
        }
        const MetricHexagon hex =
            evaluate_hexagon(cm, metrics_args.positive, metrics_args.macro);
        print_hexagon(hex);
        if (metrics_args.per_class) {
            for (const hexeval::ClassMetrics& entry : hexeval::per_class_table(cm)) {
                print_hexagon(entry.metrics,
                              "class " + cm.space().name(entry.class_index) + " ");
            }
        }
        if (!metrics_args.out.empty()) {
            ordered_json j;
            j["format"] = "hexeval-metrics";
            j["version"] = 1;
            ordered_json hexagon;
            put_hexagon(hexagon, hex);
            j["hexagon"] = std::move(hexagon);
            j["per_class"] = per_class_json(cm);
            hexeval::write_text(metrics_args.out, j.dump(2) + "\n");
        }
    });

    // ---- collapse ----------------------------------------------------------
    auto* collapse_cmd =
        app.add_subcommand("collapse", "Collapse a confusion matrix or predictions");
    struct {
        std::string cm, preds, map, vs_rest, out;
    } collapse_args;
    auto* collapse_cm = collapse_cmd->add_option("--cm", collapse_args.cm, "Confusion-matrix file");
    auto* collapse_preds =
        collapse_cmd->add_option("--preds", collapse_args.preds, "Prediction CSV file");
    collapse_cm->excludes(collapse_preds);
    auto* collapse_map =
        collapse_cmd->add_option("--map", collapse_args.map, "Class-map JSON file");
    auto* collapse_vs = collapse_cmd->add_option(
        "--vs-rest", collapse_args.vs_rest, "One-vs-rest map keeping this class");
    collapse_map->excludes(collapse_vs);
    collapse_cmd->add_option("--out", collapse_args.out, "Output file")->required();
    collapse_cmd->callback([&] {
        if (collapse_args.cm.empty() == collapse_args.preds.empty()) {
            throw hexeval::ValidationError("collapse needs exactly one of --cm or --preds");
        }
        if (collapse_args.map.empty() == collapse_args.vs_rest.empty()) {
            throw hexeval::ValidationError("collapse needs exactly one of --map or --vs-rest");
        }
        auto map_for = [&](const hexeval::LabelSpace& space) {
            return collapse_args.map.empty()
                       ? hexeval::ClassMap::vs_rest(space, collapse_args.vs_rest)
                       : hexeval::read_class_map(collapse_args.map);
        };
        if (!collapse_args.cm.empty()) {
            const hexeval::ConfusionMatrix cm = hexeval::read_cm(collapse_args.cm);
            hexeval::write_cm(collapse_args.out, hexeval::collapse(cm, map_for(cm.space())));
        } else {
            const hexeval::PredictionSet preds =
                hexeval::read_predictions(collapse_args.preds);
            hexeval::write_predictions(collapse_args.out,
                                       hexeval::collapse_preds(preds, map_for(preds.space())));
        }
    });

    // ---- curves ------------------------------------------------------------
    auto* curves_cmd = app.add_subcommand("curves", "ROC and PRC curves for a positive class");
    struct {
        std::string preds, map, positive, out_dir, stem = "curve";
    } curves_args;
    curves_cmd->add_option("--preds", curves_args.preds, "Prediction CSV file")->required();
    curves_cmd->add_option("--positive", curves_args.positive, "Positive class name")
        ->required();
    curves_cmd->add_option("--map", curves_args.map, "Class-map JSON applied before scoring");
    curves_cmd->add_option("--out-dir", curves_args.out_dir, "Directory for CSV/SVG output")
        ->required();
    curves_cmd->add_option("--stem", curves_args.stem, "Output file stem (default: curve)");
    curves_cmd->callback([&] {
        hexeval::PredictionSet preds = hexeval::read_predictions(curves_args.preds);
        if (!curves_args.map.empty()) {
            preds = hexeval::collapse_preds(preds,
                                            hexeval::read_class_map(curves_args.map));
        }
        const std::vector<hexeval::ScoredItem> scored =
            hexeval::score_items(preds, preds.space().index_of(curves_args.positive));
        const hexeval::Curve roc_curve = hexeval::roc(scored);
        const hexeval::Curve prc_curve = hexeval::prc(scored);
        std::filesystem::create_directories(curves_args.out_dir);
        const std::filesystem::path dir(curves_args.out_dir);
        const std::string& stem = curves_args.stem;
        hexeval::write_curve_csv((dir / (stem + "_roc.csv")).string(), roc_curve, "fpr", "tpr");
        hexeval::write_curve_svg((dir / (stem + "_roc.svg")).string(), roc_curve,
                                 curves_args.positive + " ROC", "false positive rate",
                                 "true positive rate", true);
        hexeval::write_curve_csv((dir / (stem + "_prc.csv")).string(), prc_curve, "recall",
                                 "precision");
        hexeval::write_curve_svg((dir / (stem + "_prc.svg")).string(), prc_curve,
                                 curves_args.positive + " PRC", "recall", "precision", false);
        std::printf("roc_auc %s\n", hexeval::format12(hexeval::round12(roc_curve.auc)).c_str());
        std::printf("prc_auc %s\n", hexeval::format12(hexeval::round12(prc_curve.auc)).c_str());
        std::printf("prc_baseline %s\n",
                    hexeval::format12(hexeval::round12(prc_curve.baseline)).c_str());
    });

    // ---- hexagon -----------------------------------------------------------
    auto* hexagon_cmd = app.add_subcommand("hexagon", "Radar plot of report scenarios");
    struct {
        std::string report, out;
        double min = 0.0;
        std::vector<std::string> scenarios;
    } hexagon_args;
    hexagon_cmd->add_option("--report", hexagon_args.report, "Report JSON file")->required();
    hexagon_cmd->add_option("--out", hexagon_args.out, "Output SVG file")->required();
    hexagon_cmd->add_option("--min", hexagon_args.min, "Axis floor in [0,1) (default: 0)");
    hexagon_cmd->add_option("--scenario", hexagon_args.scenarios,
                            "Plot only these scenarios (repeatable)");
    hexagon_cmd->callback([&] {
        const hexeval::Report report = hexeval::read_report(hexagon_args.report);
        auto selected = [&](const std::string& name) {
            return hexagon_args.scenarios.empty() ||
                   std::find(hexagon_args.scenarios.begin(), hexagon_args.scenarios.end(),
                             name) != hexagon_args.scenarios.end();
        };
        for (const std::string& wanted : hexagon_args.scenarios) {
            bool found = false;
            for (const hexeval::ScenarioResult& r : report.scenarios) {
                found = found || r.name == wanted;
            }
            if (!found) {
                throw hexeval::ValidationError("scenario '" + wanted + "' not in report");
            }
        }
        std::map<std::string, int> name_counts;
        for (const hexeval::ScenarioResult& r : report.scenarios) {
            if (selected(r.name)) ++name_counts[r.name];
        }
        std::vector<hexeval::HexagonSeries> series;
        for (const hexeval::ScenarioResult& r : report.scenarios) {
            if (!selected(r.name)) continue;
            const std::string label =
                name_counts[r.name] > 1 ? r.name + " (" + r.test + ")" : r.name;
            series.push_back({label, r.hexagon});
        }
        if (series.empty()) throw hexeval::ValidationError("no scenarios to plot");
        hexeval::write_hexagon_svg(hexagon_args.out, series, hexagon_args.min);
    });

    // ---- fuse --------------------------------------------------------------
    auto* fuse_cmd = app.add_subcommand("fuse", "Late fusion of base-model probabilities");
    fuse_cmd->require_subcommand(1);

    auto* fuse_train = fuse_cmd->add_subcommand("train", "Train an MLP fusion head");
    struct {
        std::vector<std::string> bases;
        std::string map, out;
        bool weighted = false;
        double lr = 0.01, momentum = 0.9;
        int epochs = 100, batch = 1;
        std::uint32_t seed = 0;
        std::vector<int> hidden = {32, 16};
    } ft;
    fuse_train->add_option("--base", ft.bases, "Base-model prediction CSV (repeat, >= 2)")
        ->required()
        ->expected(2, -1);
    fuse_train->add_option("--map", ft.map, "Collapse training targets with this class map");
    fuse_train->add_flag("--weighted", ft.weighted, "Inverse-frequency class weighting");
    fuse_train->add_option("--lr", ft.lr, "Learning rate (default: 0.01)");
    fuse_train->add_option("--momentum", ft.momentum, "Momentum (default: 0.9)");
    fuse_train->add_option("--epochs", ft.epochs, "Training epochs (default: 100)");
    fuse_train->add_option("--batch", ft.batch, "Mini-batch size (default: 1)");
    fuse_train->add_option("--seed", ft.seed, "Random seed (default: 0)");
    fuse_train->add_option("--hidden", ft.hidden, "Hidden layer sizes (default: 32 16)");
    fuse_train->add_option("--out", ft.out, "Output head JSON file")->required();
    fuse_train->callback([&] {
        const hexeval::FusedDataset data = join_base_files(ft.bases);
        std::optional<hexeval::ClassMap> map;
        if (!ft.map.empty()) {
            map = hexeval::read_class_map(ft.map);
            if (map->source() != data.space) {
                throw hexeval::ValidationError(
                    "class map source does not match the base label space");
            }
        }
        const hexeval::LabelSpace out_space = map ? map->target() : data.space;

        std::vector<hexeval::FusionExample> examples;
        examples.reserve(data.ids.size());
        for (std::size_t i = 0; i < data.ids.size(); ++i) {
            const int label = map ? map->target_of(data.labels[i]) : data.labels[i];
            examples.push_back({data.inputs[i], label});
        }
        if (examples.empty()) throw hexeval::ValidationError("no training examples");

        std::vector<int> dims{examples[0].input.total_length()};
        dims.insert(dims.end(), ft.hidden.begin(), ft.hidden.end());
        dims.push_back(out_space.size());
        hexeval::FusionHyper hyper;
        hyper.learning_rate = ft.lr;
        hyper.momentum = ft.momentum;
        hyper.epochs = ft.epochs;
        hyper.batch_size = ft.batch;
        hyper.seed = ft.seed;

        hexeval::LossConfig cfg;
        if (ft.weighted) {
            std::vector<std::int64_t> counts(static_cast<std::size_t>(out_space.size()), 0);
            for (const hexeval::FusionExample& example : examples) {
                ++counts[static_cast<std::size_t>(example.label)];
            }
            cfg.kind = hexeval::LossConfig::Kind::weighted;
            cfg.weights = hexeval::class_weights(counts);
        }

        const hexeval::TrainResult result =
            hexeval::head_train(hexeval::make_head(dims, hyper), examples, cfg);
        hexeval::write_head(ft.out, result.head, out_space);
        std::printf("examples %zu\n", examples.size());
        std::printf("epochs %d\n", ft.epochs);
        if (!result.epoch_loss.empty()) {
            std::printf("final_loss %s\n",
                        hexeval::format12(hexeval::round12(result.epoch_loss.back())).c_str());
        }
    });

    auto* fuse_apply =
        fuse_cmd->add_subcommand("apply", "Fuse base-model probabilities and evaluate");
    struct {
        std::vector<std::string> bases;
        std::string head, map, out;
        bool average = false;
    } fa;
    fuse_apply->add_option("--base", fa.bases, "Base-model prediction CSV (repeat, >= 2)")
        ->required()
        ->expected(2, -1);
    auto* fa_head = fuse_apply->add_option("--head", fa.head, "Trained head JSON file");
    auto* fa_avg =
        fuse_apply->add_flag("--average", fa.average, "Probability averaging instead of a head");
    fa_head->excludes(fa_avg);
    fuse_apply->add_option("--map", fa.map,
                           "Class map: collapses averaged output, or maps true labels into a "
                           "collapsed head's classes");
    fuse_apply->add_option("--out", fa.out, "Write fused predictions CSV here");
    fuse_apply->callback([&] {
        if (fa.head.empty() && !fa.average) {
            throw hexeval::ValidationError("fuse apply needs --head or --average");
        }
        const hexeval::FusedDataset data = join_base_files(fa.bases);
        std::optional<hexeval::ClassMap> map;
        if (!fa.map.empty()) {
            map = hexeval::read_class_map(fa.map);
            if (map->source() != data.space) {
                throw hexeval::ValidationError(
                    "class map source does not match the base label space");
            }
        }

        std::optional<hexeval::PredictionSet> preds;
        if (fa.average) {
            std::vector<hexeval::PredictionRecord> records;
            records.reserve(data.ids.size());
            for (std::size_t i = 0; i < data.ids.size(); ++i) {
                hexeval::PredictionRecord record;
                record.item_id = data.ids[i];
                record.true_label = data.labels[i];
                record.probs = hexeval::average_fuse(data.inputs[i]);
                records.push_back(std::move(record));
            }
            preds.emplace(data.space, std::move(records));
            if (map) preds = hexeval::collapse_preds(*preds, *map);
        } else {
            const auto [head, out_space] = hexeval::read_head(fa.head);
            if (!map && out_space != data.space) {
                throw hexeval::ValidationError(
                    "head classes do not match the base label space; pass the class map "
                    "used in training");
            }
            if (map && map->target() != out_space) {
                throw hexeval::ValidationError(
                    "class map target does not match the head's classes");
            }
            std::vector<hexeval::PredictionRecord> records;
            records.reserve(data.ids.size());
            for (std::size_t i = 0; i < data.ids.size(); ++i) {
                hexeval::PredictionRecord record;
                record.item_id = data.ids[i];
                record.true_label = map ? map->target_of(data.labels[i]) : data.labels[i];
                record.probs =
                    hexeval::softmax(hexeval::head_forward(head, data.inputs[i]));
                records.push_back(std::move(record));
            }
            preds.emplace(out_space, std::move(records));
        }

        print_hexagon(hexeval::pooled_hexagon(hexeval::build_cm(*preds)));
        if (!fa.out.empty()) hexeval::write_predictions(fa.out, *preds);
    });

    // ---- boost -------------------------------------------------------------
    auto* boost_cmd = app.add_subcommand("boost", "Stagewise additive logistic models");
    boost_cmd->require_subcommand(1);

    auto* boost_train = boost_cmd->add_subcommand("train", "Fit a model on an ARFF dataset");
    struct {
        std::string arff, out;
        int max_iter = 30, folds = 5;
        std::uint32_t seed = 0;
        int fixed_iterations = 0;
    } bt;
    boost_train->add_option("--arff", bt.arff, "Training data (ARFF)")->required();
    boost_train->add_option("--out", bt.out, "Output model JSON file")->required();
    boost_train->add_option("--max-iter", bt.max_iter,
                            "Iteration budget for cross-validation (default: 30)");
    boost_train->add_option("--folds", bt.folds, "Cross-validation folds (default: 5)");
    boost_train->add_option("--seed", bt.seed, "Fold-assignment seed (default: 0)");
    auto* bt_fixed = boost_train->add_option(
        "--iterations", bt.fixed_iterations, "Fixed iteration count, skips cross-validation");
    boost_train->callback([&] {
        const hexeval::FeatureDataset data = hexeval::read_arff(bt.arff);
        if (bt_fixed->count() > 0) {
            const hexeval::AdditiveModel model = hexeval::fit_fixed(data, bt.fixed_iterations);
            hexeval::write_model(bt.out, model);
            std::printf("iterations %d\n", model.n_iterations());
        } else {
            const hexeval::FitResult result =
                hexeval::fit(data, bt.max_iter, bt.folds, bt.seed);
            hexeval::write_model(bt.out, result.model);
            std::printf("chosen_iterations %d\n", result.chosen_iterations);
            std::printf("cv_error %s\n",
                        hexeval::format12(hexeval::round12(
                                              result.cv_error[static_cast<std::size_t>(
                                                  result.chosen_iterations - 1)]))
                            .c_str());
            if (!result.train_log_loss.empty()) {
                std::printf("train_log_loss %s\n",
                            hexeval::format12(
                                hexeval::round12(result.train_log_loss.back()))
                                .c_str());
            }
        }
    });

    auto* boost_predict = boost_cmd->add_subcommand("predict", "Evaluate a model on ARFF data");
    struct {
        std::string model, arff, out;
    } bp;
    boost_predict->add_option("--model", bp.model, "Model JSON file")->required();
    boost_predict->add_option("--arff", bp.arff, "Evaluation data (ARFF)")->required();
    boost_predict->add_option("--out", bp.out, "Write predictions CSV here");
    boost_predict->callback([&] {
        const hexeval::AdditiveModel model = hexeval::read_model(bp.model);
        const hexeval::PredictionSet preds =
            hexeval::predict_set(model, hexeval::read_arff(bp.arff));
        print_hexagon(hexeval::pooled_hexagon(hexeval::build_cm(preds)));
        if (!bp.out.empty()) hexeval::write_predictions(bp.out, preds);
    });

    // ---- matrix ------------------------------------------------------------
    auto* matrix_cmd = app.add_subcommand("matrix", "Run an experiment manifest");
    struct {
        std::string manifest, out;
        std::uint32_t seed = 0;
        int jobs = 1;
    } mx;
    matrix_cmd->add_option("--manifest", mx.manifest, "Manifest JSON file")->required();
    matrix_cmd->add_option("--out", mx.out, "Output directory for reports and curves")
        ->required();
    matrix_cmd->add_option("--seed", mx.seed, "Global seed (default: 0)");
    matrix_cmd->add_option("--jobs", mx.jobs, "Scenarios to run in parallel (default: 1)");
    matrix_cmd->callback([&] {
        const hexeval::ExperimentManifest manifest = hexeval::read_manifest(mx.manifest);
        std::filesystem::create_directories(mx.out);
        hexeval::RunOptions options;
        options.seed = mx.seed;
        options.out_dir = mx.out;
        options.jobs = mx.jobs;
        const std::vector<hexeval::ScenarioResult> results =
            hexeval::run_matrix(manifest, options);
        const std::filesystem::path dir(mx.out);
        hexeval::write_report((dir / "report.json").string(), (dir / "report.csv").string(),
                              results, mx.seed);
        for (const hexeval::ScenarioResult& result : results) {
            std::printf("scenario %s test %s acc %s mcc %s rk %s\n", result.name.c_str(),
                        result.test.c_str(), value_text(result.hexagon.acc).c_str(),
                        value_text(result.hexagon.mcc).c_str(),
                        value_text(result.hexagon.rk).c_str());
        }
    });

    // ---- summary -----------------------------------------------------------
    auto* summary_cmd = app.add_subcommand("summary", "Prevalence report for a positive class");
    struct {
        std::string preds, map, positive;
    } sm;
    summary_cmd->add_option("--preds", sm.preds, "Prediction CSV file")->required();
    summary_cmd->add_option("--positive", sm.positive, "Positive class name")->required();
    summary_cmd->add_option("--map", sm.map,
                            "Class-map JSON; the positive class then names a target class");
    summary_cmd->callback([&] {
        const hexeval::PredictionSet preds = hexeval::read_predictions(sm.preds);
        const hexeval::ClassMap map = sm.map.empty()
                                          ? hexeval::ClassMap::identity(preds.space())
                                          : hexeval::read_class_map(sm.map);
        const hexeval::PrevalenceReport report =
            hexeval::dataset_summary(preds, map.target().index_of(sm.positive), map);
        std::printf("positives %lld\n", static_cast<long long>(report.positives));
        std::printf("negatives %lld\n", static_cast<long long>(report.negatives));
        std::printf("total %lld\n",
                    static_cast<long long>(report.positives + report.negatives));
        std::printf("prevalence %s\n",
                    hexeval::format12(hexeval::round12(report.prevalence)).c_str());
    });

    auto emit_error = [&](const char* type, const std::string& message,
                          const hexeval::ParseError* parse) {
        if (json_errors) {
            ordered_json j;
            j["type"] = type;
            j["message"] = message;
            if (parse) {
                j["file"] = parse->file();
                j["line"] = parse->line();
            }
            std::fprintf(stderr, "%s\n", j.dump().c_str());
        } else {
            std::fprintf(stderr, "error: %s\n", message.c_str());
        }
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const hexeval::ParseError& e) {
        emit_error("parse", e.what(), &e);
        return 1;
    } catch (const hexeval::ValidationError& e) {
        emit_error("validation", e.what(), nullptr);
        return 1;
    } catch (const hexeval::TrainingError& e) {
        emit_error("training", e.what(), nullptr);
        return 2;
    } catch (const std::exception& e) {
        emit_error("runtime", e.what(), nullptr);
        return 2;
    }
    return 0;
}
