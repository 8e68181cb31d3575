#include "hexeval/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <set>
#include <thread>

#include <json.hpp>

#include "hexeval/curves.hpp"
#include "hexeval/rng.hpp"
#include "hexeval/svg.hpp"

namespace hexeval {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_json_file(const std::string& path) {
    const std::string text = read_text(path);
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t limit = std::min(static_cast<std::size_t>(e.byte), text.size());
        const int line =
            1 + static_cast<int>(std::count(text.begin(), text.begin() + limit, '\n'));
        throw ParseError(path, line, e.what());
    }
}

std::string resolve_path(const std::string& base_dir, const std::string& path) {
    const std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

std::string sanitize_filename(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                          (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
        out += keep ? c : '_';
    }
    return out;
}

DatasetSpec::Kind parse_kind(const std::string& kind, const std::string& path,
                             const std::string& name) {
    if (kind == "predictions") return DatasetSpec::Kind::predictions;
    if (kind == "features") return DatasetSpec::Kind::features;
    if (kind == "cm") return DatasetSpec::Kind::cm;
    if (kind == "fusion") return DatasetSpec::Kind::fusion;
    throw ParseError(path, 1, "dataset '" + name + "': unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// report serialization helpers

constexpr const char* kMetricNames[7] = {"rec", "prec", "spec", "acc", "mcc", "f1", "rk"};

std::array<const MetricValue*, 7> metric_fields(const MetricHexagon& hex) {
    return {&hex.rec, &hex.prec, &hex.spec, &hex.acc, &hex.mcc, &hex.f1, &hex.rk};
}

std::array<MetricValue*, 7> metric_fields(MetricHexagon& hex) {
    return {&hex.rec, &hex.prec, &hex.spec, &hex.acc, &hex.mcc, &hex.f1, &hex.rk};
}

void put_hexagon(ordered_json& j, const MetricHexagon& hex) {
    const auto fields = metric_fields(hex);
    std::vector<std::string> undefined;
    for (std::size_t i = 0; i < 7; ++i) {
        j[kMetricNames[i]] = round12(fields[i]->value);
        if (!fields[i]->defined) undefined.emplace_back(kMetricNames[i]);
    }
    j["undefined"] = undefined;
}

MetricHexagon hexagon_from(const ordered_json& j) {
    MetricHexagon hex;
    const std::vector<std::string> undefined = j.at("undefined");
    auto fields = metric_fields(hex);
    for (std::size_t i = 0; i < 7; ++i) {
        fields[i]->value = j.at(kMetricNames[i]).get<double>();
        fields[i]->defined =
            std::find(undefined.begin(), undefined.end(), kMetricNames[i]) == undefined.end();
    }
    return hex;
}

// ---------------------------------------------------------------------------
// loaded inputs

struct LoadedInputs {
    std::map<std::string, DatasetSpec> specs;
    std::map<std::string, PredictionSet> predictions;
    std::map<std::string, FeatureDataset> features;
    std::map<std::string, ConfusionMatrix> cms;
    std::map<std::string, FusedDataset> fusions;
    std::map<std::string, ClassMap> maps;
};

LoadedInputs load_inputs(const ExperimentManifest& manifest) {
    LoadedInputs loaded;
    for (const auto& [name, spec] : manifest.datasets) loaded.specs[name] = spec;

    std::set<std::string> wanted_datasets, wanted_maps;
    for (const ScenarioSpec& scenario : manifest.scenarios) {
        for (const std::string& ref : scenario.train) wanted_datasets.insert(ref);
        for (const std::string& ref : scenario.test) wanted_datasets.insert(ref);
        if (!scenario.map.empty()) wanted_maps.insert(scenario.map);
    }
    // Fusion datasets pull in their base prediction sets.
    std::vector<std::string> queue(wanted_datasets.begin(), wanted_datasets.end());
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const DatasetSpec& spec = loaded.specs.at(queue[q]);
        if (spec.kind != DatasetSpec::Kind::fusion) continue;
        for (const std::string& base : spec.bases) {
            if (wanted_datasets.insert(base).second) queue.push_back(base);
        }
    }

    for (const std::string& name : wanted_datasets) {
        const DatasetSpec& spec = loaded.specs.at(name);
        const std::string path = resolve_path(manifest.base_dir, spec.path);
        switch (spec.kind) {
        case DatasetSpec::Kind::predictions:
            loaded.predictions.emplace(name, read_predictions(path));
            break;
        case DatasetSpec::Kind::features:
            loaded.features.emplace(name, read_arff(path));
            break;
        case DatasetSpec::Kind::cm:
            loaded.cms.emplace(name, read_cm(path));
            break;
        case DatasetSpec::Kind::fusion:
            break; // joined after the bases are in
        }
    }
    for (const std::string& name : wanted_datasets) {
        const DatasetSpec& spec = loaded.specs.at(name);
        if (spec.kind != DatasetSpec::Kind::fusion) continue;
        std::vector<PredictionSet> bases;
        bases.reserve(spec.bases.size());
        for (const std::string& base : spec.bases) bases.push_back(loaded.predictions.at(base));
        try {
            loaded.fusions.emplace(name, join_probability_sets(bases));
        } catch (const ValidationError& e) {
            throw ValidationError("fusion dataset '" + name + "': " + e.what());
        }
    }
    for (const std::string& name : wanted_maps) {
        loaded.maps.emplace(name,
                            read_class_map(resolve_path(manifest.base_dir,
                                                        manifest.class_maps.at(name))));
    }
    return loaded;
}

// ---------------------------------------------------------------------------
// scenario execution

std::vector<ScenarioResult> run_scenario(const ScenarioSpec& spec, const LoadedInputs& inputs,
                                         const RunOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    const std::uint32_t seed = scenario_seed(spec.name, options.seed);
    const ClassMap* map = spec.map.empty() ? nullptr : &inputs.maps.at(spec.map);

    auto finish = [&](const ConfusionMatrix& cm, const std::optional<PredictionSet>& curve_preds,
                      const std::string& test_name) {
        ScenarioResult result;
        result.name = spec.name;
        result.train = spec.train;
        result.test = test_name;
        result.seed = seed;
        if (!spec.positive.empty()) {
            const std::optional<int> positive = cm.space().find(spec.positive);
            if (!positive) {
                throw ValidationError("positive class '" + spec.positive +
                                      "' not in the evaluated label space");
            }
            result.hexagon = binary_metrics(binarize(cm, *positive));
            result.hexagon.rk = rk_coefficient(cm);
        } else {
            result.hexagon = pooled_hexagon(cm);
        }
        for (const ClassMetrics& entry : per_class_table(cm)) {
            result.per_class.emplace_back(cm.space().name(entry.class_index), entry.metrics);
        }
        if (spec.curves) {
            if (!curve_preds) {
                throw ValidationError("curves need probability predictions");
            }
            const std::vector<ScoredItem> scored =
                score_items(*curve_preds, curve_preds->space().index_of(spec.positive));
            const Curve roc_curve = roc(scored);
            const Curve prc_curve = prc(scored);
            result.curves.present = true;
            result.curves.roc_auc = roc_curve.auc;
            result.curves.prc_auc = prc_curve.auc;
            result.curves.prc_baseline = prc_curve.baseline;
            const std::string stem =
                sanitize_filename(spec.name) + "_" + sanitize_filename(test_name);
            result.curves.roc_csv = stem + "_roc.csv";
            result.curves.roc_svg = stem + "_roc.svg";
            result.curves.prc_csv = stem + "_prc.csv";
            result.curves.prc_svg = stem + "_prc.svg";
            if (!options.out_dir.empty()) {
                const std::filesystem::path dir(options.out_dir);
                write_curve_csv((dir / result.curves.roc_csv).string(), roc_curve, "fpr", "tpr");
                write_curve_svg((dir / result.curves.roc_svg).string(), roc_curve,
                                spec.name + " ROC", "false positive rate", "true positive rate",
                                true);
                write_curve_csv((dir / result.curves.prc_csv).string(), prc_curve, "recall",
                                "precision");
                write_curve_svg((dir / result.curves.prc_svg).string(), prc_curve,
                                spec.name + " PRC", "recall", "precision", false);
            }
        }
        return result;
    };

    std::vector<ScenarioResult> results;
    if (spec.model == "precomputed") {
        for (const std::string& ref : spec.test) {
            if (inputs.specs.at(ref).kind == DatasetSpec::Kind::cm) {
                ConfusionMatrix cm = inputs.cms.at(ref);
                if (map) cm = collapse(cm, *map);
                results.push_back(finish(cm, std::nullopt, ref));
            } else {
                const PredictionSet& preds = inputs.predictions.at(ref);
                ConfusionMatrix cm = build_cm(preds);
                if (map) cm = collapse(cm, *map);
                std::optional<PredictionSet> curve_preds;
                if (spec.curves) {
                    curve_preds = map ? collapse_preds(preds, *map) : preds;
                }
                results.push_back(finish(cm, curve_preds, ref));
            }
        }
    } else if (spec.model == "average") {
        for (const std::string& ref : spec.test) {
            const FusedDataset& fused = inputs.fusions.at(ref);
            std::vector<PredictionRecord> records;
            records.reserve(fused.ids.size());
            for (std::size_t i = 0; i < fused.ids.size(); ++i) {
                PredictionRecord record;
                record.item_id = fused.ids[i];
                record.true_label = fused.labels[i];
                record.probs = average_fuse(fused.inputs[i]);
                records.push_back(std::move(record));
            }
            const PredictionSet preds(fused.space, std::move(records));
            ConfusionMatrix cm = build_cm(preds);
            if (map) cm = collapse(cm, *map);
            std::optional<PredictionSet> curve_preds;
            if (spec.curves) {
                curve_preds = map ? collapse_preds(preds, *map) : preds;
            }
            results.push_back(finish(cm, curve_preds, ref));
        }
    } else if (spec.model == "mlp") {
        const FusedDataset& lead = inputs.fusions.at(spec.train[0]);
        if (map && map->source() != lead.space) {
            throw ValidationError("class map source does not match the training label space");
        }
        const LabelSpace out_space = map ? map->target() : lead.space;

        std::vector<FusionExample> examples;
        for (const std::string& ref : spec.train) {
            const FusedDataset& fused = inputs.fusions.at(ref);
            if (fused.space != lead.space) {
                throw ValidationError("training datasets use different label spaces");
            }
            for (std::size_t i = 0; i < fused.ids.size(); ++i) {
                const int label = map ? map->target_of(fused.labels[i]) : fused.labels[i];
                examples.push_back({fused.inputs[i], label});
            }
        }
        if (examples.empty()) throw ValidationError("no training examples");
        const int input_dim = examples[0].input.total_length();
        for (const FusionExample& example : examples) {
            if (example.input.total_length() != input_dim) {
                throw ValidationError("fusion inputs have differing total lengths");
            }
        }

        std::vector<int> dims{input_dim};
        dims.insert(dims.end(), spec.hidden.begin(), spec.hidden.end());
        dims.push_back(out_space.size());
        FusionHyper hyper;
        hyper.learning_rate = spec.learning_rate;
        hyper.momentum = spec.momentum;
        hyper.epochs = spec.epochs;
        hyper.batch_size = spec.batch_size;
        hyper.seed = seed;

        LossConfig cfg;
        if (spec.weighted) {
            std::vector<std::int64_t> counts(static_cast<std::size_t>(out_space.size()), 0);
            for (const FusionExample& example : examples) {
                ++counts[static_cast<std::size_t>(example.label)];
            }
            cfg.kind = LossConfig::Kind::weighted;
            cfg.weights = class_weights(counts);
        }
        const FusionHead head = head_train(make_head(dims, hyper), examples, cfg).head;

        for (const std::string& ref : spec.test) {
            const FusedDataset& fused = inputs.fusions.at(ref);
            if (fused.space != lead.space) {
                throw ValidationError("test dataset '" + ref +
                                      "' uses a different label space than the training data");
            }
            std::vector<PredictionRecord> records;
            records.reserve(fused.ids.size());
            for (std::size_t i = 0; i < fused.ids.size(); ++i) {
                PredictionRecord record;
                record.item_id = fused.ids[i];
                record.true_label = map ? map->target_of(fused.labels[i]) : fused.labels[i];
                record.probs = softmax(head_forward(head, fused.inputs[i]));
                records.push_back(std::move(record));
            }
            const PredictionSet preds(out_space, std::move(records));
            results.push_back(finish(build_cm(preds),
                                     spec.curves ? std::optional<PredictionSet>(preds)
                                                 : std::nullopt,
                                     ref));
        }
    } else { // boost
        auto remap = [&](const FeatureDataset& data) {
            if (!map) return data;
            if (map->source() != data.space()) {
                throw ValidationError("class map source does not match the feature label space");
            }
            std::vector<FeatureRow> rows = data.rows();
            for (FeatureRow& row : rows) row.label = map->target_of(row.label);
            return FeatureDataset(map->target(), data.n_features(), std::move(rows));
        };

        const FeatureDataset& lead = inputs.features.at(spec.train[0]);
        std::vector<FeatureRow> rows;
        for (const std::string& ref : spec.train) {
            const FeatureDataset& data = inputs.features.at(ref);
            if (data.space() != lead.space() || data.n_features() != lead.n_features()) {
                throw ValidationError("training datasets use different schemas");
            }
            rows.insert(rows.end(), data.rows().begin(), data.rows().end());
        }
        const FeatureDataset train =
            remap(FeatureDataset(lead.space(), lead.n_features(), std::move(rows)));
        const AdditiveModel model =
            spec.iterations ? fit_fixed(train, *spec.iterations)
                            : fit(train, spec.max_iterations, spec.folds, seed).model;

        for (const std::string& ref : spec.test) {
            const FeatureDataset& data = inputs.features.at(ref);
            if (data.space() != lead.space() || data.n_features() != lead.n_features()) {
                throw ValidationError("test dataset '" + ref + "' uses a different schema");
            }
            const PredictionSet preds = predict_set(model, remap(data));
            results.push_back(finish(build_cm(preds),
                                     spec.curves ? std::optional<PredictionSet>(preds)
                                                 : std::nullopt,
                                     ref));
        }
    }

    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    for (ScenarioResult& result : results) result.timing_ms = elapsed_ms;
    return results;
}

} // namespace

std::uint32_t scenario_seed(const std::string& name, std::uint32_t global_seed) {
    return fnv1a(name) ^ (global_seed * 2654435761u);
}

// ---------------------------------------------------------------------------
// manifest

ExperimentManifest read_manifest(const std::string& path) {
    const ordered_json j = parse_json_file(path);
    ExperimentManifest manifest;
    manifest.base_dir = std::filesystem::path(path).parent_path().string();
    try {
        if (j.value("version", 0) != 1) {
            throw ValidationError("unsupported manifest version");
        }
        if (j.contains("datasets")) {
            for (const auto& [name, entry] : j.at("datasets").items()) {
                DatasetSpec spec;
                spec.kind = parse_kind(entry.at("kind").get<std::string>(), path, name);
                if (spec.kind == DatasetSpec::Kind::fusion) {
                    spec.bases = entry.at("bases").get<std::vector<std::string>>();
                    if (spec.bases.size() < 2) {
                        throw ValidationError("fusion dataset '" + name +
                                              "' needs at least 2 bases");
                    }
                } else {
                    spec.path = entry.at("path").get<std::string>();
                }
                manifest.datasets.emplace_back(name, std::move(spec));
            }
        }
        if (j.contains("class_maps")) {
            for (const auto& [name, entry] : j.at("class_maps").items()) {
                manifest.class_maps[name] = entry.get<std::string>();
            }
        }
        for (const ordered_json& entry : j.value("scenarios", ordered_json::array())) {
            ScenarioSpec spec;
            spec.name = entry.at("name").get<std::string>();
            spec.model = entry.at("model").get<std::string>();
            spec.train = entry.value("train", std::vector<std::string>{});
            spec.test = entry.at("test").get<std::vector<std::string>>();
            spec.map = entry.value("map", "");
            spec.positive = entry.value("positive", "");
            spec.curves = entry.value("curves", false);
            spec.weighted = entry.value("weighted", false);
            spec.learning_rate = entry.value("learning_rate", spec.learning_rate);
            spec.momentum = entry.value("momentum", spec.momentum);
            spec.epochs = entry.value("epochs", spec.epochs);
            spec.batch_size = entry.value("batch_size", spec.batch_size);
            spec.hidden = entry.value("hidden", spec.hidden);
            spec.max_iterations = entry.value("max_iterations", spec.max_iterations);
            spec.folds = entry.value("folds", spec.folds);
            if (entry.contains("iterations")) {
                spec.iterations = entry.at("iterations").get<int>();
            }
            manifest.scenarios.push_back(std::move(spec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, 1, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(path, 1, e.what());
    }

    // Static validation: names, references, kind compatibility.
    std::map<std::string, const DatasetSpec*> datasets;
    for (const auto& [name, spec] : manifest.datasets) {
        if (name.empty()) throw ParseError(path, 1, "dataset with empty name");
        datasets[name] = &spec;
    }
    for (const auto& [name, spec] : manifest.datasets) {
        if (spec.kind != DatasetSpec::Kind::fusion) continue;
        for (const std::string& base : spec.bases) {
            const auto it = datasets.find(base);
            if (it == datasets.end()) {
                throw ParseError(path, 1,
                                 "fusion dataset '" + name + "' references unknown dataset '" +
                                     base + "'");
            }
            if (it->second->kind != DatasetSpec::Kind::predictions) {
                throw ParseError(path, 1,
                                 "fusion dataset '" + name + "' base '" + base +
                                     "' must be a predictions dataset");
            }
        }
    }

    std::set<std::string> scenario_names;
    for (const ScenarioSpec& spec : manifest.scenarios) {
        const std::string at = "scenario '" + spec.name + "': ";
        if (spec.name.empty()) throw ParseError(path, 1, "scenario with empty name");
        if (!scenario_names.insert(spec.name).second) {
            throw ParseError(path, 1, "duplicate scenario name '" + spec.name + "'");
        }
        const bool trainable = spec.model == "mlp" || spec.model == "boost";
        if (spec.model != "precomputed" && spec.model != "average" && !trainable) {
            throw ParseError(path, 1, at + "unknown model kind '" + spec.model + "'");
        }
        if (spec.test.empty()) throw ParseError(path, 1, at + "needs at least one test dataset");
        if (trainable && spec.train.empty()) {
            throw ParseError(path, 1, at + "model kind '" + spec.model + "' needs training data");
        }
        if (!trainable && !spec.train.empty()) {
            throw ParseError(path, 1,
                             at + "model kind '" + spec.model + "' takes no training data");
        }
        if (!spec.map.empty() && manifest.class_maps.find(spec.map) == manifest.class_maps.end()) {
            throw ParseError(path, 1, at + "unknown class map '" + spec.map + "'");
        }
        if (spec.curves && spec.positive.empty()) {
            throw ParseError(path, 1, at + "curves need a positive class");
        }
        for (int h : spec.hidden) {
            if (h < 1) throw ParseError(path, 1, at + "hidden layer sizes must be positive");
        }

        auto check_ref = [&](const std::string& ref, bool is_test) {
            const auto it = datasets.find(ref);
            if (it == datasets.end()) {
                throw ParseError(path, 1, at + "unknown dataset '" + ref + "'");
            }
            const DatasetSpec::Kind kind = it->second->kind;
            const char* role = is_test ? "test" : "training";
            if (spec.model == "precomputed") {
                if (kind != DatasetSpec::Kind::predictions && kind != DatasetSpec::Kind::cm) {
                    throw ParseError(path, 1, at + std::string(role) + " dataset '" + ref +
                                                  "' must hold predictions or a confusion matrix");
                }
                if (spec.curves && kind == DatasetSpec::Kind::cm) {
                    throw ParseError(path, 1,
                                     at + "curves need probabilities, '" + ref +
                                         "' is a confusion matrix");
                }
            } else if (spec.model == "boost") {
                if (kind != DatasetSpec::Kind::features) {
                    throw ParseError(path, 1, at + std::string(role) + " dataset '" + ref +
                                                  "' must be a features dataset");
                }
            } else { // average, mlp
                if (kind != DatasetSpec::Kind::fusion) {
                    throw ParseError(path, 1, at + std::string(role) + " dataset '" + ref +
                                                  "' must be a fusion dataset");
                }
            }
        };
        for (const std::string& ref : spec.train) check_ref(ref, false);
        for (const std::string& ref : spec.test) check_ref(ref, true);
    }
    return manifest;
}

// ---------------------------------------------------------------------------
// matrix runner

std::vector<ScenarioResult> run_matrix(const ExperimentManifest& manifest,
                                       const RunOptions& options) {
    const LoadedInputs inputs = load_inputs(manifest);
    const std::size_t n = manifest.scenarios.size();
    std::vector<std::vector<ScenarioResult>> buckets(n);
    std::vector<std::exception_ptr> failures(n);

    auto run_one = [&](std::size_t s) {
        try {
            buckets[s] = run_scenario(manifest.scenarios[s], inputs, options);
        } catch (const TrainingError& e) {
            failures[s] = std::make_exception_ptr(
                TrainingError("scenario '" + manifest.scenarios[s].name + "': " + e.what()));
        } catch (const ValidationError& e) {
            failures[s] = std::make_exception_ptr(
                ValidationError("scenario '" + manifest.scenarios[s].name + "': " + e.what()));
        } catch (...) {
            failures[s] = std::current_exception();
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1 || n <= 1) {
        for (std::size_t s = 0; s < n; ++s) run_one(s);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        const std::size_t worker_count = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
        for (std::size_t w = 0; w < worker_count; ++w) {
            workers.emplace_back([&] {
                while (true) {
                    const std::size_t s = next.fetch_add(1);
                    if (s >= n) return;
                    run_one(s);
                }
            });
        }
        for (std::thread& worker : workers) worker.join();
    }

    // Report the first failure in manifest order, for stable behavior under
    // parallel execution.
    for (std::size_t s = 0; s < n; ++s) {
        if (failures[s]) std::rethrow_exception(failures[s]);
    }

    std::vector<ScenarioResult> results;
    for (std::vector<ScenarioResult>& bucket : buckets) {
        for (ScenarioResult& result : bucket) results.push_back(std::move(result));
    }
    return results;
}

// ---------------------------------------------------------------------------
// reports

std::string report_to_json(const std::vector<ScenarioResult>& results, std::uint32_t seed) {
    ordered_json j;
    j["format"] = "hexeval-report";
    j["version"] = 1;
    j["tool"] = kToolVersion;
    j["orientation"] = "rows=actual";
    j["seed"] = seed;
    ordered_json scenarios = ordered_json::array();
    for (const ScenarioResult& result : results) {
        ordered_json s;
        s["name"] = result.name;
        s["train"] = result.train;
        s["test"] = result.test;
        s["seed"] = result.seed;
        s["timing_ms"] = round12(result.timing_ms);
        ordered_json hexagon;
        put_hexagon(hexagon, result.hexagon);
        s["hexagon"] = std::move(hexagon);
        ordered_json per_class = ordered_json::array();
        for (const auto& [class_name, metrics] : result.per_class) {
            ordered_json row;
            row["class"] = class_name;
            put_hexagon(row, metrics);
            per_class.push_back(std::move(row));
        }
        s["per_class"] = std::move(per_class);
        if (result.curves.present) {
            s["curves"] = {{"roc_csv", result.curves.roc_csv},
                           {"roc_svg", result.curves.roc_svg},
                           {"prc_csv", result.curves.prc_csv},
                           {"prc_svg", result.curves.prc_svg},
                           {"roc_auc", round12(result.curves.roc_auc)},
                           {"prc_auc", round12(result.curves.prc_auc)},
                           {"prc_baseline", round12(result.curves.prc_baseline)}};
        }
        scenarios.push_back(std::move(s));
    }
    j["scenarios"] = std::move(scenarios);
    return j.dump(2) + "\n";
}

std::string report_to_csv(const std::vector<ScenarioResult>& results) {
    std::string out = "scenario,test,rec,prec,spec,acc,mcc,f1,rk\n";
    for (const ScenarioResult& result : results) {
        out += result.name + "," + result.test;
        for (const MetricValue* value : metric_fields(result.hexagon)) {
            out += ",";
            if (value->defined) out += format12(round12(value->value));
        }
        out += "\n";
    }
    return out;
}

void write_report(const std::string& json_path, const std::string& csv_path,
                  const std::vector<ScenarioResult>& results, std::uint32_t seed) {
    write_text(json_path, report_to_json(results, seed));
    write_text(csv_path, report_to_csv(results));
}

Report read_report(const std::string& path) {
    const ordered_json j = parse_json_file(path);
    try {
        if (j.value("format", "") != "hexeval-report") {
            throw ValidationError("not a report file");
        }
        if (j.at("version").get<int>() != 1) {
            throw ValidationError("unsupported report version");
        }
        Report report;
        report.seed = j.at("seed");
        for (const ordered_json& s : j.at("scenarios")) {
            ScenarioResult result;
            result.name = s.at("name").get<std::string>();
            result.train = s.at("train").get<std::vector<std::string>>();
            result.test = s.at("test").get<std::string>();
            result.seed = s.at("seed");
            result.timing_ms = s.at("timing_ms");
            result.hexagon = hexagon_from(s.at("hexagon"));
            for (const ordered_json& row : s.at("per_class")) {
                result.per_class.emplace_back(row.at("class").get<std::string>(),
                                              hexagon_from(row));
            }
            if (s.contains("curves")) {
                const ordered_json& curves = s.at("curves");
                result.curves.present = true;
                result.curves.roc_csv = curves.at("roc_csv").get<std::string>();
                result.curves.roc_svg = curves.at("roc_svg").get<std::string>();
                result.curves.prc_csv = curves.at("prc_csv").get<std::string>();
                result.curves.prc_svg = curves.at("prc_svg").get<std::string>();
                result.curves.roc_auc = curves.at("roc_auc");
                result.curves.prc_auc = curves.at("prc_auc");
                result.curves.prc_baseline = curves.at("prc_baseline");
            }
            report.scenarios.push_back(std::move(result));
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, 1, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(path, 1, e.what());
    }
}

} // namespace hexeval
