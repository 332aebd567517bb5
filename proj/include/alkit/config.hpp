#ifndef ALKIT_CONFIG_HPP
#define ALKIT_CONFIG_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "alkit/metrics.hpp"
#include "alkit/model.hpp"
#include "alkit/oracle.hpp"
#include "alkit/stopping.hpp"
#include "alkit/strategies.hpp"

namespace alkit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DatasetConfig {
    std::string path;
    int label_column = -1;  // -1 selects the last column
    bool has_header = false;
    int name_column = -1;  // -1 means the data has no name column
};

enum class SplitKind { holdout, kfold, file };

struct SplitConfig {
    SplitKind kind = SplitKind::holdout;
    double test_ratio = 0.3;
    int k = 5;
    int split_count = 1;
    double initial_label_rate = 0.05;
    std::string names_file;
};

enum class ModelKind { logistic_regression, knn };

struct ModelConfig {
    ModelKind name = ModelKind::logistic_regression;
    double l2 = 0.01;
    int max_iter = 500;
    double tol = 1e-6;
    int k = 5;  // knn only
};

struct OracleConfig {
    std::string id = "oracle";
    double noise_rate = 0.0;
    double cost = 1.0;
    std::map<int, double> cost_per_label;  // non-empty overrides `cost`
    std::uint64_t seed = 0;                // defaults to the experiment seed
};

enum class ProtocolKind { single, ieth, repeated };

struct ProtocolConfig {
    ProtocolKind kind = ProtocolKind::single;
    int repeat = 5;       // repeated with one oracle: asks per instance
    double epsilon = 0.8;  // ieth: fraction of the best oracle's score
};

// The full experiment description. Parsing fills in defaults, so two
// configs that differ only in omitted-vs-explicit defaults are the
// same experiment and share a digest.
struct ExperimentConfig {
    std::string experiment = "experiment";
    std::uint64_t seed = 0;
    int batch_size = 1;
    std::string output_dir = "results";
    int workers = 0;  // 0 = one worker per hardware thread
    DatasetConfig dataset;
    SplitConfig split;
    ModelConfig model;
    StrategyConfig strategy;
    std::vector<OracleConfig> oracles{OracleConfig{}};
    ProtocolConfig protocol;
    StoppingCriterion stopping;
    std::vector<MetricKind> metrics{MetricKind::accuracy};

    // Structural checks that need no dataset. Throws ConfigError.
    void validate() const;

    // Canonical JSON with every field filled, excluding output_dir and
    // workers: neither changes any result byte, so neither may change
    // the digest.
    std::string canonical() const;

    // 16-hex-digit FNV-1a hash of canonical(); stored in state-file
    // headers and checked on resume.
    std::string digest() const;

    std::vector<OracleSpec> oracle_specs() const;
    std::unique_ptr<Classifier> make_model(int num_classes) const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

std::string split_kind_name(SplitKind kind);
std::string model_kind_name(ModelKind kind);
std::string protocol_kind_name(ProtocolKind kind);

}  // namespace alkit

#endif  // ALKIT_CONFIG_HPP
