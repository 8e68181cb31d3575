#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hexeval/io.hpp"
#include "hexeval/metrics.hpp"

namespace hexeval {

inline constexpr const char* kToolVersion = "hexeval 0.1.0";

struct DatasetSpec {
    enum class Kind { predictions, features, cm, fusion };
    Kind kind = Kind::predictions;
    std::string path;               // predictions | features | cm
    std::vector<std::string> bases; // fusion: names of prediction datasets joined on item_id
};

struct ScenarioSpec {
    std::string name;
    std::string model; // precomputed | average | mlp | boost
    std::vector<std::string> train;
    std::vector<std::string> test;
    std::string map;      // class-map name; empty = no collapse
    std::string positive; // class in the evaluated space; empty = pooled hexagon
    bool curves = false;

    // mlp
    bool weighted = false;
    double learning_rate = 0.01;
    double momentum = 0.9;
    int epochs = 100;
    int batch_size = 1;
    std::vector<int> hidden = {32, 16};

    // boost
    int max_iterations = 30;
    int folds = 5;
    std::optional<int> iterations; // fixed count, skips cross-validation
};

struct ExperimentManifest {
    std::string base_dir; // resolved from the manifest's location
    std::vector<std::pair<std::string, DatasetSpec>> datasets;
    std::map<std::string, std::string> class_maps; // name -> file path
    std::vector<ScenarioSpec> scenarios;
};

/// Parses and statically validates a manifest: unique names, resolvable
/// references, dataset kinds compatible with each scenario's model.
ExperimentManifest read_manifest(const std::string& path);

struct CurveArtifacts {
    bool present = false;
    std::string roc_csv, roc_svg, prc_csv, prc_svg; // paths relative to the output directory
    double roc_auc = 0.0;
    double prc_auc = 0.0;
    double prc_baseline = 0.0;
};

/// One (scenario, test dataset) evaluation.
struct ScenarioResult {
    std::string name;
    std::vector<std::string> train;
    std::string test;
    std::uint32_t seed = 0;
    double timing_ms = 0.0;
    MetricHexagon hexagon;
    std::vector<std::pair<std::string, MetricHexagon>> per_class;
    CurveArtifacts curves;
};

struct RunOptions {
    std::uint32_t seed = 0;
    /// Where curve CSV/SVG files go; when empty, curve numbers are still
    /// computed but no files are written.
    std::string out_dir;
    int jobs = 1;
};

/// Seed a scenario derives from its name and the global seed; independent of
/// the scenario's position in the manifest.
std::uint32_t scenario_seed(const std::string& name, std::uint32_t global_seed);

/// Runs every scenario against each of its test datasets. Results follow
/// manifest order regardless of the job count.
std::vector<ScenarioResult> run_matrix(const ExperimentManifest& manifest,
                                       const RunOptions& options);

std::string report_to_json(const std::vector<ScenarioResult>& results, std::uint32_t seed);
std::string report_to_csv(const std::vector<ScenarioResult>& results);
void write_report(const std::string& json_path, const std::string& csv_path,
                  const std::vector<ScenarioResult>& results, std::uint32_t seed);

struct Report {
    std::uint32_t seed = 0;
    std::vector<ScenarioResult> scenarios;
};

Report read_report(const std::string& path);

} // namespace hexeval
