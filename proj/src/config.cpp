#include "alkit/config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "alkit/knn.hpp"
#include "alkit/logistic_regression.hpp"
#include "alkit/number_format.hpp"
#include "alkit/random.hpp"

namespace alkit {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError("config: " + message); }

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> keys) {
    if (!j.is_object()) fail(where + " must be an object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : keys) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) fail("unknown key '" + item.key() + "' in " + where);
    }
}

std::string get_string(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) fail(std::string(key) + " must be a string");
    return j[key].get<std::string>();
}

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) fail(std::string(key) + " must be a number");
    const double v = j[key].get<double>();
    if (!std::isfinite(v)) fail(std::string(key) + " must be finite");
    return v;
}

int get_int(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) fail(std::string(key) + " must be an integer");
    return j[key].get<int>();
}

bool get_bool(const json& j, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) fail(std::string(key) + " must be a boolean");
    return j[key].get<bool>();
}

std::uint64_t get_u64(const json& j, const char* key, std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer() || (j[key].is_number_integer() && j[key].get<double>() < 0))
        fail(std::string(key) + " must be a non-negative integer");
    return j[key].get<std::uint64_t>();
}

template <typename Fn>
auto parse_name(const json& j, const char* key, const char* fallback, Fn&& from_name) {
    const std::string name = get_string(j, key, fallback);
    try {
        return from_name(name);
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

DatasetConfig parse_dataset(const json& j) {
    check_keys(j, "dataset", {"path", "label_column", "has_header", "name_column"});
    DatasetConfig d;
    d.path = get_string(j, "path", "");
    d.label_column = get_int(j, "label_column", -1);
    d.has_header = get_bool(j, "has_header", false);
    d.name_column = get_int(j, "name_column", -1);
    return d;
}

SplitConfig parse_split(const json& j) {
    check_keys(j, "split",
               {"kind", "test_ratio", "k", "split_count", "initial_label_rate", "names_file"});
    SplitConfig s;
    const std::string kind = get_string(j, "kind", "holdout");
    if (kind == "holdout")
        s.kind = SplitKind::holdout;
    else if (kind == "kfold")
        s.kind = SplitKind::kfold;
    else if (kind == "file")
        s.kind = SplitKind::file;
    else
        fail("unknown split kind: " + kind);
    s.test_ratio = get_number(j, "test_ratio", 0.3);
    s.k = get_int(j, "k", 5);
    s.split_count = get_int(j, "split_count", 1);
    s.initial_label_rate = get_number(j, "initial_label_rate", 0.05);
    s.names_file = get_string(j, "names_file", "");
    return s;
}

ModelConfig parse_model(const json& j) {
    check_keys(j, "model", {"name", "l2", "max_iter", "tol", "k"});
    ModelConfig m;
    const std::string name = get_string(j, "name", "logistic_regression");
    if (name == "logistic_regression")
        m.name = ModelKind::logistic_regression;
    else if (name == "knn")
        m.name = ModelKind::knn;
    else
        fail("unknown model: " + name);
    m.l2 = get_number(j, "l2", 0.01);
    m.max_iter = get_int(j, "max_iter", 500);
    m.tol = get_number(j, "tol", 1e-6);
    m.k = get_int(j, "k", 5);
    return m;
}

StrategyConfig parse_strategy(const json& j) {
    check_keys(j, "strategy",
               {"name", "measure", "committee_size", "disagreement", "subsample_cap", "rbf_gamma",
                "knn_k"});
    StrategyConfig s;
    s.name = parse_name(j, "name", "uncertainty", strategy_from_name);
    s.measure = parse_name(j, "measure", "entropy", measure_from_name);
    s.committee_size = get_int(j, "committee_size", 5);
    s.disagreement = parse_name(j, "disagreement", "vote_entropy", disagreement_from_name);
    s.subsample_cap = get_int(j, "subsample_cap", 0);
    s.rbf_gamma = get_number(j, "rbf_gamma", 0.0);
    s.knn_k = get_int(j, "knn_k", 10);
    return s;
}

OracleConfig parse_oracle(const json& j, std::size_t position, std::uint64_t experiment_seed) {
    const std::string where = "oracles[" + std::to_string(position) + "]";
    check_keys(j, where, {"id", "noise_rate", "cost", "cost_per_label", "seed"});
    OracleConfig o;
    o.id = get_string(j, "id", "oracle");
    o.noise_rate = get_number(j, "noise_rate", 0.0);
    o.cost = get_number(j, "cost", 1.0);
    o.seed = get_u64(j, "seed", experiment_seed);
    if (j.contains("cost_per_label")) {
        const json& table = j["cost_per_label"];
        if (!table.is_object()) fail(where + ".cost_per_label must be an object");
        for (const auto& item : table.items()) {
            const std::string& key = item.key();
            if (key.empty() ||
                !std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c); }))
                fail(where + ".cost_per_label keys must be class indices, got '" + key + "'");
            if (!item.value().is_number()) fail(where + ".cost_per_label values must be numbers");
            o.cost_per_label[std::stoi(key)] = item.value().get<double>();
        }
    }
    return o;
}

ProtocolConfig parse_protocol(const json& j) {
    check_keys(j, "protocol", {"kind", "repeat", "epsilon"});
    ProtocolConfig p;
    const std::string kind = get_string(j, "kind", "single");
    if (kind == "single")
        p.kind = ProtocolKind::single;
    else if (kind == "ieth")
        p.kind = ProtocolKind::ieth;
    else if (kind == "repeated")
        p.kind = ProtocolKind::repeated;
    else
        fail("unknown oracle protocol: " + kind);
    p.repeat = get_int(j, "repeat", 5);
    p.epsilon = get_number(j, "epsilon", 0.8);
    return p;
}

StoppingCriterion parse_stopping(const json& j) {
    check_keys(j, "stopping", {"kind", "threshold"});
    StoppingCriterion s;
    s.kind = parse_name(j, "kind", "num_of_queries", stopping_from_name);
    s.threshold = get_number(j, "threshold", 50.0);
    return s;
}

bool safe_name(const std::string& name) {
    if (name.empty()) return false;
    for (unsigned char c : name)
        if (!std::isalnum(c) && c != '_' && c != '-') return false;
    return true;
}

void append_cost_table(std::string& out, const std::map<int, double>& table) {
    out += '{';
    bool first = true;
    for (const auto& [label, cost] : table) {
        if (!first) out += ',';
        first = false;
        out += '"' + std::to_string(label) + "\":" + format_double(cost);
    }
    out += '}';
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded()) fail("not valid JSON");
    check_keys(j, "config",
               {"experiment", "seed", "batch_size", "output_dir", "workers", "dataset", "split",
                "model", "strategy", "oracles", "protocol", "stopping", "metrics"});
    ExperimentConfig c;
    c.experiment = get_string(j, "experiment", "experiment");
    c.seed = get_u64(j, "seed", 0);
    c.batch_size = get_int(j, "batch_size", 1);
    c.output_dir = get_string(j, "output_dir", "results");
    c.workers = get_int(j, "workers", 0);
    if (j.contains("dataset")) c.dataset = parse_dataset(j["dataset"]);
    if (j.contains("split")) c.split = parse_split(j["split"]);
    if (j.contains("model")) c.model = parse_model(j["model"]);
    if (j.contains("strategy")) c.strategy = parse_strategy(j["strategy"]);
    if (j.contains("oracles")) {
        if (!j["oracles"].is_array() || j["oracles"].empty())
            fail("oracles must be a non-empty array");
        c.oracles.clear();
        for (std::size_t i = 0; i < j["oracles"].size(); ++i)
            c.oracles.push_back(parse_oracle(j["oracles"][i], i, c.seed));
    } else {
        c.oracles[0].seed = c.seed;
    }
    if (j.contains("protocol")) c.protocol = parse_protocol(j["protocol"]);
    if (j.contains("stopping")) c.stopping = parse_stopping(j["stopping"]);
    if (j.contains("metrics")) {
        if (!j["metrics"].is_array() || j["metrics"].empty())
            fail("metrics must be a non-empty array");
        c.metrics.clear();
        for (const auto& m : j["metrics"]) {
            if (!m.is_string()) fail("metrics entries must be strings");
            try {
                c.metrics.push_back(metric_from_name(m.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        }
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

void ExperimentConfig::validate() const {
    if (!safe_name(experiment))
        fail("experiment name must be non-empty and use only [A-Za-z0-9_-]");
    if (batch_size < 1) fail("batch_size must be >= 1");
    if (output_dir.empty()) fail("output_dir must not be empty");
    if (workers < 0) fail("workers must be >= 0");
    if (dataset.path.empty()) fail("dataset.path is required");
    if (dataset.label_column < -1) fail("dataset.label_column must be >= 0 or -1 (last)");
    if (dataset.name_column < -1) fail("dataset.name_column must be >= 0 or -1 (none)");
    if (dataset.name_column >= 0 && dataset.name_column == dataset.label_column)
        fail("dataset.name_column must differ from dataset.label_column");

    switch (split.kind) {
        case SplitKind::holdout:
            if (!(split.test_ratio > 0.0 && split.test_ratio < 1.0))
                fail("split.test_ratio must be in (0, 1)");
            if (split.split_count < 1) fail("split.split_count must be >= 1");
            break;
        case SplitKind::kfold:
            if (split.k < 2) fail("split.k must be >= 2");
            break;
        case SplitKind::file:
            if (split.names_file.empty()) fail("split.names_file is required for kind 'file'");
            break;
    }
    if (split.kind != SplitKind::file &&
        !(split.initial_label_rate > 0.0 && split.initial_label_rate < 1.0))
        fail("split.initial_label_rate must be in (0, 1)");

    if (model.name == ModelKind::logistic_regression) {
        if (model.l2 < 0.0) fail("model.l2 must be >= 0");
        if (model.max_iter < 1) fail("model.max_iter must be >= 1");
        if (model.tol <= 0.0) fail("model.tol must be > 0");
    } else if (model.k < 1) {
        fail("model.k must be >= 1");
    }

    try {
        strategy.validate(batch_size);
        stopping.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }

    std::set<std::string> ids;
    for (const OracleConfig& o : oracles) {
        if (!safe_name(o.id)) fail("oracle ids must be non-empty and use only [A-Za-z0-9_-]");
        if (!ids.insert(o.id).second) fail("duplicate oracle id: " + o.id);
        if (!(o.noise_rate >= 0.0 && o.noise_rate < 1.0))
            fail("oracle noise_rate must be in [0, 1)");
        if (o.cost <= 0.0) fail("oracle cost must be > 0");
        for (const auto& [label, cost] : o.cost_per_label) {
            if (label < 0) fail("cost_per_label class indices must be >= 0");
            if (cost <= 0.0) fail("cost_per_label costs must be > 0");
        }
    }

    switch (protocol.kind) {
        case ProtocolKind::single:
            if (oracles.size() != 1) fail("protocol 'single' requires exactly one oracle");
            break;
        case ProtocolKind::ieth:
            if (!(protocol.epsilon > 0.0 && protocol.epsilon <= 1.0))
                fail("protocol.epsilon must be in (0, 1]");
            break;
        case ProtocolKind::repeated:
            if (protocol.repeat < 1) fail("protocol.repeat must be >= 1");
            break;
    }

    std::set<MetricKind> seen;
    for (MetricKind m : metrics)
        if (!seen.insert(m).second) fail("duplicate metric: " + metric_name(m));
}

std::string ExperimentConfig::canonical() const {
    std::string out = "{\"experiment\":\"" + experiment + '"';
    out += ",\"seed\":" + format_u64(seed);
    out += ",\"batch_size\":" + std::to_string(batch_size);
    out += ",\"dataset\":{\"path\":\"" + dataset.path + '"';
    out += ",\"label_column\":" + std::to_string(dataset.label_column);
    out += ",\"has_header\":" + std::string(dataset.has_header ? "true" : "false");
    out += ",\"name_column\":" + std::to_string(dataset.name_column) + '}';
    out += ",\"split\":{\"kind\":\"" + split_kind_name(split.kind) + '"';
    out += ",\"test_ratio\":" + format_double(split.test_ratio);
    out += ",\"k\":" + std::to_string(split.k);
    out += ",\"split_count\":" + std::to_string(split.split_count);
    out += ",\"initial_label_rate\":" + format_double(split.initial_label_rate);
    out += ",\"names_file\":\"" + split.names_file + "\"}";
    out += ",\"model\":{\"name\":\"" + model_kind_name(model.name) + '"';
    out += ",\"l2\":" + format_double(model.l2);
    out += ",\"max_iter\":" + std::to_string(model.max_iter);
    out += ",\"tol\":" + format_double(model.tol);
    out += ",\"k\":" + std::to_string(model.k) + '}';
    out += ",\"strategy\":{\"name\":\"" + strategy_name(strategy.name) + '"';
    out += ",\"measure\":\"" + measure_name(strategy.measure) + '"';
    out += ",\"committee_size\":" + std::to_string(strategy.committee_size);
    out += ",\"disagreement\":\"" + disagreement_name(strategy.disagreement) + '"';
    out += ",\"subsample_cap\":" + std::to_string(strategy.subsample_cap);
    out += ",\"rbf_gamma\":" + format_double(strategy.rbf_gamma);
    out += ",\"knn_k\":" + std::to_string(strategy.knn_k) + '}';
    out += ",\"oracles\":[";
    for (std::size_t i = 0; i < oracles.size(); ++i) {
        if (i > 0) out += ',';
        const OracleConfig& o = oracles[i];
        out += "{\"id\":\"" + o.id + '"';
        out += ",\"noise_rate\":" + format_double(o.noise_rate);
        out += ",\"cost\":" + format_double(o.cost);
        out += ",\"cost_per_label\":";
        append_cost_table(out, o.cost_per_label);
        out += ",\"seed\":" + format_u64(o.seed) + '}';
    }
    out += "],\"protocol\":{\"kind\":\"" + protocol_kind_name(protocol.kind) + '"';
    out += ",\"repeat\":" + std::to_string(protocol.repeat);
    out += ",\"epsilon\":" + format_double(protocol.epsilon) + '}';
    out += ",\"stopping\":{\"kind\":\"" + stopping_name(stopping.kind) + '"';
    out += ",\"threshold\":" + format_double(stopping.threshold) + '}';
    out += ",\"metrics\":[";
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        if (i > 0) out += ',';
        out += '"' + metric_name(metrics[i]) + '"';
    }
    out += "]}";
    return out;
}

std::string ExperimentConfig::digest() const {
    const std::uint64_t hash = fnv1a64(canonical());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

std::vector<OracleSpec> ExperimentConfig::oracle_specs() const {
    std::vector<OracleSpec> specs;
    specs.reserve(oracles.size());
    for (const OracleConfig& o : oracles) {
        OracleSpec spec;
        spec.id = o.id;
        spec.noise_rate = o.noise_rate;
        spec.cost.uniform = o.cost;
        spec.cost.per_label = o.cost_per_label;
        spec.seed = o.seed;
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::unique_ptr<Classifier> ExperimentConfig::make_model(int num_classes) const {
    if (model.name == ModelKind::logistic_regression) {
        LogisticRegression::Params params;
        params.l2 = model.l2;
        params.max_iter = model.max_iter;
        params.tol = model.tol;
        return std::make_unique<LogisticRegression>(num_classes, params);
    }
    return std::make_unique<KnnClassifier>(num_classes, model.k);
}

std::string split_kind_name(SplitKind kind) {
    switch (kind) {
        case SplitKind::holdout: return "holdout";
        case SplitKind::kfold: return "kfold";
        case SplitKind::file: return "file";
    }
    return "holdout";
}

std::string model_kind_name(ModelKind kind) {
    return kind == ModelKind::logistic_regression ? "logistic_regression" : "knn";
}

std::string protocol_kind_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::single: return "single";
        case ProtocolKind::ieth: return "ieth";
        case ProtocolKind::repeated: return "repeated";
    }
    return "single";
}

}  // namespace alkit
