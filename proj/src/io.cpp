#include "hexeval/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace hexeval {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kProbSumTol = 1e-6;

std::string trim(const std::string& s) {
    std::size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Lines without trailing newlines or carriage returns; 1-based numbering
/// matches the on-disk file.
std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    for (std::string& line : lines) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
    }
    return lines;
}

double parse_double(const std::string& token, const std::string& path, int line,
                    const std::string& what) {
    const std::string t = trim(token);
    if (!t.empty()) {
        char* end = nullptr;
        const double value = std::strtod(t.c_str(), &end);
        if (end == t.c_str() + t.size()) return value;
    }
    throw ParseError(path, line, "non-numeric " + what + " '" + token + "'");
}

std::int64_t parse_count(const std::string& token, const std::string& path, int line) {
    const std::string t = trim(token);
    if (!t.empty()) {
        char* end = nullptr;
        const long long value = std::strtoll(t.c_str(), &end, 10);
        if (end == t.c_str() + t.size()) {
            if (value < 0) throw ParseError(path, line, "negative count " + t);
            return value;
        }
    }
    throw ParseError(path, line, "non-integer count '" + token + "'");
}

ordered_json parse_json(const std::string& text, const std::string& path) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t limit = std::min(static_cast<std::size_t>(e.byte), text.size());
        const int line =
            1 + static_cast<int>(std::count(text.begin(), text.begin() + limit, '\n'));
        throw ParseError(path, line, e.what());
    }
}

/// Numbers pass through round12 so that dumping, re-reading, and dumping
/// again is byte-stable.
ordered_json json_number(double value) { return round12(value); }

} // namespace

std::string format12(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

double round12(double value) { return std::strtod(format12(value).c_str(), nullptr); }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << content;
    if (!out) throw ValidationError("cannot write '" + path + "'");
}

// ---------------------------------------------------------------------------
// prediction CSV

PredictionSet read_predictions(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_text(path));

    std::vector<std::string> pragma_classes;
    std::vector<std::string> header;
    int header_line = 0;
    std::size_t i = 0;
    for (; i < lines.size(); ++i) {
        const std::string line = trim(lines[i]);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            if (body.rfind("classes=", 0) == 0) {
                for (const std::string& name : split(body.substr(8), ',')) {
                    pragma_classes.push_back(trim(name));
                }
            }
            continue;
        }
        header = split(line, ',');
        header_line = static_cast<int>(i) + 1;
        ++i;
        break;
    }
    if (header.empty()) {
        throw ParseError(path, static_cast<int>(lines.size()) + 1, "missing header line");
    }
    if (header.size() < 2 || trim(header[0]) != "item_id" || trim(header[1]) != "true_label") {
        throw ParseError(path, header_line, "header must start with item_id,true_label");
    }

    std::vector<std::string> prob_classes;
    std::size_t column = 2;
    while (column < header.size() && trim(header[column]).rfind("prob_", 0) == 0) {
        const std::string name = trim(header[column]).substr(5);
        if (name.empty()) throw ParseError(path, header_line, "empty class name in prob_ column");
        prob_classes.push_back(name);
        ++column;
    }
    bool has_predicted = false;
    if (column < header.size()) {
        if (trim(header[column]) != "predicted") {
            throw ParseError(path, header_line,
                             "unexpected column '" + trim(header[column]) + "'");
        }
        has_predicted = true;
        ++column;
    }
    if (column != header.size()) {
        throw ParseError(path, header_line,
                         "unexpected column '" + trim(header[column]) + "' after predicted");
    }
    const bool has_probs = !prob_classes.empty();
    if (!has_probs && !has_predicted) {
        throw ParseError(path, header_line, "header needs prob_ columns or a predicted column");
    }
    if (!has_probs && pragma_classes.empty()) {
        throw ParseError(path, header_line,
                         "files without prob_ columns need a '# classes=...' pragma");
    }
    if (has_probs && !pragma_classes.empty() && pragma_classes != prob_classes) {
        throw ParseError(path, header_line, "classes pragma disagrees with prob_ columns");
    }

    LabelSpace space = [&] {
        try {
            return LabelSpace(has_probs ? prob_classes : pragma_classes);
        } catch (const ValidationError& e) {
            throw ParseError(path, header_line, e.what());
        }
    }();
    const int k = space.size();

    std::vector<PredictionRecord> records;
    std::unordered_set<std::string> seen_ids;
    for (; i < lines.size(); ++i) {
        const std::string line = trim(lines[i]);
        if (line.empty() || line[0] == '#') continue;
        const int line_no = static_cast<int>(i) + 1;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != header.size()) {
            throw ParseError(path, line_no,
                             "expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
        }

        PredictionRecord record;
        record.item_id = trim(fields[0]);
        if (record.item_id.empty()) throw ParseError(path, line_no, "empty item_id");
        if (!seen_ids.insert(record.item_id).second) {
            throw ParseError(path, line_no, "duplicate item_id '" + record.item_id + "'");
        }
        const std::string true_name = trim(fields[1]);
        const std::optional<int> true_index = space.find(true_name);
        if (!true_index) throw ParseError(path, line_no, "unknown class name '" + true_name + "'");
        record.true_label = *true_index;

        if (has_probs) {
            Eigen::VectorXd probs(k);
            double sum = 0.0;
            for (int c = 0; c < k; ++c) {
                const double p = parse_double(fields[2 + static_cast<std::size_t>(c)], path,
                                              line_no, "probability");
                if (p < 0.0 || p > 1.0) {
                    throw ParseError(path, line_no,
                                     "probability " + format12(p) + " outside [0,1]");
                }
                probs[c] = p;
                sum += p;
            }
            if (std::abs(sum - 1.0) > kProbSumTol) {
                throw ParseError(path, line_no, "probabilities sum to " + format12(sum) +
                                                    ", expected 1 within 1e-6");
            }
            record.probs = std::move(probs);
        }
        if (has_predicted) {
            const std::string predicted = trim(fields.back());
            if (!predicted.empty()) {
                const std::optional<int> index = space.find(predicted);
                if (!index) {
                    throw ParseError(path, line_no, "unknown class name '" + predicted + "'");
                }
                if (record.probs && *index != argmax(*record.probs)) {
                    throw ParseError(path, line_no,
                                     "predicted label disagrees with argmax of probabilities");
                }
                record.predicted_label = *index;
            }
        }
        if (!record.probs && !record.predicted_label) {
            throw ParseError(path, line_no, "record needs probabilities or a predicted label");
        }
        records.push_back(std::move(record));
    }
    return PredictionSet(std::move(space), std::move(records));
}

void write_predictions(const std::string& path, const PredictionSet& preds) {
    bool any_probs = false, all_probs = true, any_predicted = false;
    for (const PredictionRecord& record : preds.records()) {
        any_probs = any_probs || record.probs.has_value();
        all_probs = all_probs && record.probs.has_value();
        any_predicted = any_predicted || record.predicted_label.has_value();
    }
    if (any_probs && !all_probs) {
        throw ValidationError(
            "cannot serialize a prediction set where only some records carry probabilities");
    }
    const bool with_probs = any_probs;
    const bool with_predicted = !with_probs || any_predicted;

    std::ostringstream out;
    if (!with_probs) {
        out << "# classes=";
        for (int c = 0; c < preds.space().size(); ++c) {
            if (c > 0) out << ',';
            out << preds.space().name(c);
        }
        out << '\n';
    }
    out << "item_id,true_label";
    if (with_probs) {
        for (int c = 0; c < preds.space().size(); ++c) out << ",prob_" << preds.space().name(c);
    }
    if (with_predicted) out << ",predicted";
    out << '\n';

    for (const PredictionRecord& record : preds.records()) {
        out << record.item_id << ',' << preds.space().name(record.true_label);
        if (with_probs) {
            for (int c = 0; c < preds.space().size(); ++c) {
                out << ',' << format12((*record.probs)[c]);
            }
        }
        if (with_predicted) {
            out << ',';
            if (record.predicted_label) out << preds.space().name(*record.predicted_label);
        }
        out << '\n';
    }
    write_text(path, out.str());
}

// ---------------------------------------------------------------------------
// confusion-matrix files

ConfusionMatrix read_cm(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_text(path));

    bool pragma_seen = false, transpose = false;
    std::vector<std::string> names;
    int k = 0, rows_read = 0;
    CountMatrix counts;
    std::optional<LabelSpace> space;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string line = trim(lines[i]);
        const int line_no = static_cast<int>(i) + 1;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            if (body == "rows=actual") {
                pragma_seen = true;
            } else if (body == "rows=predicted") {
                pragma_seen = true;
                transpose = true;
            }
            continue;
        }
        if (!pragma_seen) {
            throw ParseError(path, line_no, "missing '# rows=actual' orientation pragma");
        }
        const std::vector<std::string> fields = split(line, ',');
        if (!space) {
            if (fields.size() < 3) {
                throw ParseError(path, line_no, "header needs at least 2 class names");
            }
            for (std::size_t c = 1; c < fields.size(); ++c) names.push_back(trim(fields[c]));
            try {
                space.emplace(names);
            } catch (const ValidationError& e) {
                throw ParseError(path, line_no, e.what());
            }
            k = space->size();
            counts = CountMatrix::Zero(k, k);
            continue;
        }
        if (rows_read == k) {
            throw ParseError(path, line_no,
                             "expected " + std::to_string(k) + " rows, found extra data");
        }
        if (fields.size() != static_cast<std::size_t>(k) + 1) {
            throw ParseError(path, line_no,
                             "expected " + std::to_string(k + 1) + " fields (row label plus " +
                                 std::to_string(k) + " counts), got " +
                                 std::to_string(fields.size()));
        }
        if (trim(fields[0]) != names[static_cast<std::size_t>(rows_read)]) {
            throw ParseError(path, line_no,
                             "row label '" + trim(fields[0]) + "' does not match header order ('" +
                                 names[static_cast<std::size_t>(rows_read)] + "' expected)");
        }
        for (int c = 0; c < k; ++c) {
            counts(rows_read, c) = parse_count(fields[static_cast<std::size_t>(c) + 1], path,
                                               line_no);
        }
        ++rows_read;
    }
    if (!space) {
        throw ParseError(path, static_cast<int>(lines.size()) + 1, "missing header line");
    }
    if (rows_read != k) {
        throw ParseError(path, static_cast<int>(lines.size()) + 1,
                         "expected " + std::to_string(k) + " rows, got " +
                             std::to_string(rows_read));
    }
    if (transpose) counts = CountMatrix(counts.transpose());
    return ConfusionMatrix(*space, std::move(counts));
}

void write_cm(const std::string& path, const ConfusionMatrix& cm) {
    std::ostringstream out;
    out << "# rows=actual\n";
    out << "class";
    for (int c = 0; c < cm.space().size(); ++c) out << ',' << cm.space().name(c);
    out << '\n';
    for (int a = 0; a < cm.space().size(); ++a) {
        out << cm.space().name(a);
        for (int p = 0; p < cm.space().size(); ++p) out << ',' << cm.counts()(a, p);
        out << '\n';
    }
    write_text(path, out.str());
}

// ---------------------------------------------------------------------------
// ARFF subset

namespace {

struct ArffAttribute {
    std::string name;
    bool nominal = false;
    std::vector<std::string> values; // nominal only
    int line = 0;
};

} // namespace

FeatureDataset read_arff(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_text(path));

    bool relation_seen = false, in_data = false;
    std::vector<ArffAttribute> attributes;
    int nominal_index = -1;
    std::vector<FeatureRow> rows;
    std::vector<std::string> class_tokens;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string line = trim(lines[i]);
        const int line_no = static_cast<int>(i) + 1;
        if (line.empty() || line[0] == '%') continue;

        if (!in_data) {
            const std::string lower = lowercase(line);
            if (lower.rfind("@relation", 0) == 0) {
                if (trim(line.substr(9)).empty()) {
                    throw ParseError(path, line_no, "missing relation name");
                }
                relation_seen = true;
            } else if (lower.rfind("@attribute", 0) == 0) {
                const std::string rest = trim(line.substr(10));
                const std::size_t space_pos = rest.find_first_of(" \t");
                if (rest.empty() || space_pos == std::string::npos) {
                    throw ParseError(path, line_no, "attribute needs a name and a kind");
                }
                ArffAttribute attr;
                attr.name = rest.substr(0, space_pos);
                attr.line = line_no;
                const std::string kind = trim(rest.substr(space_pos));
                if (!kind.empty() && kind[0] == '{') {
                    if (kind.back() != '}') {
                        throw ParseError(path, line_no, "unterminated nominal value set");
                    }
                    attr.nominal = true;
                    for (const std::string& raw : split(kind.substr(1, kind.size() - 2), ',')) {
                        const std::string value = trim(raw);
                        if (value.empty()) {
                            throw ParseError(path, line_no, "empty nominal value");
                        }
                        attr.values.push_back(value);
                    }
                    if (nominal_index >= 0) {
                        throw ParseError(path, line_no,
                                         "only one nominal attribute (the class) is supported");
                    }
                    nominal_index = static_cast<int>(attributes.size());
                } else {
                    const std::string kind_lower = lowercase(kind);
                    if (kind_lower != "numeric" && kind_lower != "real" &&
                        kind_lower != "integer") {
                        throw ParseError(path, line_no,
                                         "unsupported attribute kind '" + kind + "'");
                    }
                }
                attributes.push_back(std::move(attr));
            } else if (lower.rfind("@data", 0) == 0) {
                if (!relation_seen) throw ParseError(path, line_no, "missing @relation");
                if (attributes.size() < 2) {
                    throw ParseError(path, line_no, "needs at least one feature and a class");
                }
                if (nominal_index < 0) {
                    throw ParseError(path, line_no, "a nominal class attribute is required");
                }
                in_data = true;
            } else if (line[0] == '@') {
                throw ParseError(path, line_no,
                                 "unknown declaration '" + split(line, ' ')[0] + "'");
            } else {
                throw ParseError(path, line_no, "unexpected text before @data");
            }
            continue;
        }

        if (line[0] == '{') {
            throw ParseError(path, line_no, "sparse ARFF rows are not supported");
        }
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != attributes.size()) {
            throw ParseError(path, line_no,
                             "row has " + std::to_string(fields.size()) + " values for " +
                                 std::to_string(attributes.size()) + " attributes");
        }
        FeatureRow row;
        row.features.resize(static_cast<Eigen::Index>(attributes.size()) - 1);
        Eigen::Index feature = 0;
        for (std::size_t a = 0; a < attributes.size(); ++a) {
            const std::string token = trim(fields[a]);
            if (token == "?") {
                throw ParseError(path, line_no, "missing values are not supported");
            }
            if (attributes[a].nominal) {
                if (std::find(attributes[a].values.begin(), attributes[a].values.end(), token) ==
                    attributes[a].values.end()) {
                    throw ParseError(path, line_no, "value '" + token +
                                                        "' not declared for attribute '" +
                                                        attributes[a].name + "'");
                }
                class_tokens.push_back(token);
            } else {
                row.features[feature++] = parse_double(fields[a], path, line_no,
                                                       "value for attribute '" +
                                                           attributes[a].name + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (!in_data) {
        throw ParseError(path, static_cast<int>(lines.size()) + 1, "missing @data section");
    }

    const ArffAttribute& class_attr = attributes[static_cast<std::size_t>(nominal_index)];
    LabelSpace space = [&] {
        try {
            return LabelSpace(class_attr.values);
        } catch (const ValidationError& e) {
            throw ParseError(path, class_attr.line, e.what());
        }
    }();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        rows[r].label = space.index_of(class_tokens[r]);
    }
    return FeatureDataset(std::move(space), static_cast<int>(attributes.size()) - 1,
                          std::move(rows));
}

namespace {

void check_arff_token(const std::string& token, const std::string& what) {
    if (token.empty() || token.find_first_of(",{}\n\r") != std::string::npos ||
        token != trim(token)) {
        throw ValidationError("cannot write " + what + " '" + token + "' to ARFF");
    }
}

} // namespace

void write_arff(const std::string& path, const FeatureDataset& data,
                const std::string& relation) {
    check_arff_token(relation, "relation name");
    std::ostringstream out;
    out << "@relation " << relation << '\n';
    for (int f = 0; f < data.n_features(); ++f) {
        out << "@attribute f" << f << " numeric\n";
    }
    out << "@attribute class {";
    for (int c = 0; c < data.space().size(); ++c) {
        check_arff_token(data.space().name(c), "class name");
        if (c > 0) out << ',';
        out << data.space().name(c);
    }
    out << "}\n@data\n";
    for (const FeatureRow& row : data.rows()) {
        for (Eigen::Index f = 0; f < row.features.size(); ++f) {
            out << format12(row.features[f]) << ',';
        }
        out << data.space().name(row.label) << '\n';
    }
    write_text(path, out.str());
}

// ---------------------------------------------------------------------------
// class-map JSON

ClassMap read_class_map(const std::string& path) {
    const ordered_json j = parse_json(read_text(path), path);
    try {
        const std::vector<std::string> source_names = j.at("source");
        const std::vector<std::string> target_names = j.at("target");
        LabelSpace source(source_names);
        LabelSpace target(target_names);

        const ordered_json& assignment = j.at("assignment");
        if (!assignment.is_object()) {
            throw ValidationError("assignment must map source names to target names");
        }
        std::vector<int> mapping(static_cast<std::size_t>(source.size()), -1);
        for (const auto& [key, value] : assignment.items()) {
            const std::optional<int> s = source.find(key);
            if (!s) {
                throw ValidationError("assignment references unknown source class '" + key + "'");
            }
            const std::optional<int> t = target.find(value.get<std::string>());
            if (!t) {
                throw ValidationError("assignment sends '" + key + "' to unknown target class '" +
                                      value.get<std::string>() + "'");
            }
            mapping[static_cast<std::size_t>(*s)] = *t;
        }
        for (int s = 0; s < source.size(); ++s) {
            if (mapping[static_cast<std::size_t>(s)] < 0) {
                throw ValidationError("class '" + source.name(s) + "' has no assignment");
            }
        }
        return ClassMap(std::move(source), std::move(target), std::move(mapping));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, 1, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(path, 1, e.what());
    }
}

void write_class_map(const std::string& path, const ClassMap& map) {
    ordered_json j;
    j["source"] = map.source().names();
    j["target"] = map.target().names();
    ordered_json assignment = ordered_json::object();
    for (int s = 0; s < map.source().size(); ++s) {
        assignment[map.source().name(s)] = map.target().name(map.target_of(s));
    }
    j["assignment"] = std::move(assignment);
    write_text(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// fusion-head JSON

std::string head_to_json(const FusionHead& head, const LabelSpace& outputs) {
    if (head.layers.empty()) throw ValidationError("fusion head has no layers");
    if (outputs.size() != head.output_size()) {
        throw ValidationError("head emits " + std::to_string(head.output_size()) +
                              " outputs for " + std::to_string(outputs.size()) + " classes");
    }
    ordered_json j;
    j["format"] = "hexeval-head";
    j["version"] = 1;
    std::vector<int> dims{head.input_size()};
    for (const FusionLayer& layer : head.layers) {
        dims.push_back(static_cast<int>(layer.weights.rows()));
    }
    j["dims"] = dims;
    j["classes"] = outputs.names();
    j["hyper"] = {{"learning_rate", json_number(head.hyper.learning_rate)},
                  {"momentum", json_number(head.hyper.momentum)},
                  {"epochs", head.hyper.epochs},
                  {"batch_size", head.hyper.batch_size},
                  {"seed", head.hyper.seed}};
    ordered_json layers = ordered_json::array();
    for (const FusionLayer& layer : head.layers) {
        ordered_json weights = ordered_json::array();
        for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
                weights.push_back(json_number(layer.weights(r, c)));
            }
        }
        ordered_json bias = ordered_json::array();
        for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
            bias.push_back(json_number(layer.bias[r]));
        }
        layers.push_back({{"weights", std::move(weights)}, {"bias", std::move(bias)}});
    }
    j["layers"] = std::move(layers);
    return j.dump(2) + "\n";
}

std::pair<FusionHead, LabelSpace> head_from_json(const std::string& text,
                                                 const std::string& origin) {
    const ordered_json j = parse_json(text, origin);
    try {
        if (j.value("format", "") != "hexeval-head") {
            throw ValidationError("not a fusion-head file");
        }
        if (j.at("version").get<int>() != 1) {
            throw ValidationError("unsupported fusion-head version");
        }
        const std::vector<int> dims = j.at("dims");
        if (dims.size() < 2) throw ValidationError("dimension chain too short");

        FusionHead head;
        head.hyper.learning_rate = j.at("hyper").at("learning_rate");
        head.hyper.momentum = j.at("hyper").at("momentum");
        head.hyper.epochs = j.at("hyper").at("epochs");
        head.hyper.batch_size = j.at("hyper").at("batch_size");
        head.hyper.seed = j.at("hyper").at("seed");

        const ordered_json& layers = j.at("layers");
        if (layers.size() != dims.size() - 1) {
            throw ValidationError("layer count does not match dimension chain");
        }
        for (std::size_t l = 0; l < layers.size(); ++l) {
            const int rows = dims[l + 1], cols = dims[l];
            const std::vector<double> weights = layers[l].at("weights");
            const std::vector<double> bias = layers[l].at("bias");
            if (weights.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) ||
                bias.size() != static_cast<std::size_t>(rows)) {
                throw ValidationError("layer " + std::to_string(l) + " has the wrong shape");
            }
            FusionLayer layer;
            layer.weights.resize(rows, cols);
            for (int r = 0; r < rows; ++r) {
                for (int c = 0; c < cols; ++c) {
                    layer.weights(r, c) = weights[static_cast<std::size_t>(r) *
                                                      static_cast<std::size_t>(cols) +
                                                  static_cast<std::size_t>(c)];
                }
            }
            layer.bias = Eigen::Map<const Eigen::VectorXd>(bias.data(),
                                                           static_cast<Eigen::Index>(rows));
            head.layers.push_back(std::move(layer));
        }
        LabelSpace outputs(j.at("classes").get<std::vector<std::string>>());
        if (outputs.size() != head.output_size()) {
            throw ValidationError("class list does not match the output layer");
        }
        return {std::move(head), std::move(outputs)};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin, 1, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(origin, 1, e.what());
    }
}

void write_head(const std::string& path, const FusionHead& head, const LabelSpace& outputs) {
    write_text(path, head_to_json(head, outputs));
}

std::pair<FusionHead, LabelSpace> read_head(const std::string& path) {
    return head_from_json(read_text(path), path);
}

// ---------------------------------------------------------------------------
// additive-model JSON

std::string model_to_json(const AdditiveModel& model) {
    ordered_json j;
    j["format"] = "hexeval-boost";
    j["version"] = 1;
    j["classes"] = model.space().names();
    j["n_features"] = model.n_features();
    ordered_json stages = ordered_json::array();
    for (const std::vector<StageRegressor>& stage : model.stages()) {
        ordered_json regressors = ordered_json::array();
        for (const StageRegressor& r : stage) {
            regressors.push_back({{"attribute", r.attribute},
                                  {"slope", json_number(r.slope)},
                                  {"intercept", json_number(r.intercept)}});
        }
        stages.push_back(std::move(regressors));
    }
    j["stages"] = std::move(stages);
    return j.dump(2) + "\n";
}

AdditiveModel model_from_json(const std::string& text, const std::string& origin) {
    const ordered_json j = parse_json(text, origin);
    try {
        if (j.value("format", "") != "hexeval-boost") {
            throw ValidationError("not an additive-model file");
        }
        if (j.at("version").get<int>() != 1) {
            throw ValidationError("unsupported additive-model version");
        }
        LabelSpace space(j.at("classes").get<std::vector<std::string>>());
        const int n_features = j.at("n_features");
        std::vector<std::vector<StageRegressor>> stages;
        for (const ordered_json& stage : j.at("stages")) {
            std::vector<StageRegressor> regressors;
            for (const ordered_json& r : stage) {
                regressors.push_back({r.at("attribute").get<int>(), r.at("slope").get<double>(),
                                      r.at("intercept").get<double>()});
            }
            stages.push_back(std::move(regressors));
        }
        return AdditiveModel(std::move(space), n_features, std::move(stages));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin, 1, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(origin, 1, e.what());
    }
}

void write_model(const std::string& path, const AdditiveModel& model) {
    write_text(path, model_to_json(model));
}

AdditiveModel read_model(const std::string& path) {
    return model_from_json(read_text(path), path);
}

// ---------------------------------------------------------------------------
// curve CSV

void write_curve_csv(const std::string& path, const Curve& curve, const std::string& x_axis,
                     const std::string& y_axis) {
    std::ostringstream out;
    out << "# auc=" << format12(curve.auc) << '\n';
    out << "# baseline=" << format12(curve.baseline) << '\n';
    out << x_axis << ',' << y_axis << '\n';
    for (const CurvePoint& point : curve.points) {
        out << format12(point.x) << ',' << format12(point.y) << '\n';
    }
    write_text(path, out.str());
}

} // namespace hexeval
