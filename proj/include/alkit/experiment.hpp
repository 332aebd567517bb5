#ifndef ALKIT_EXPERIMENT_HPP
#define ALKIT_EXPERIMENT_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "alkit/config.hpp"
#include "alkit/curves.hpp"
#include "alkit/dataset.hpp"
#include "alkit/oracle.hpp"
#include "alkit/split.hpp"
#include "alkit/state_io.hpp"

namespace alkit {

struct RunError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One batch of oracle answers, aligned with the queried indices.
struct RoundAnswers {
    std::vector<int> labels;
    double cost = 0.0;
};

// Oracle-side state carried across rounds: IEthresh reward histories
// (empty for the single and repeated protocols). Never serialized; a
// resumed run rebuilds it by replaying the trace, which is exact
// because oracle noise is a pure function of (seed, id, instance,
// repeat).
struct ProtocolState {
    OracleHistories histories;
};

// Answers one round's batch under the configured protocol and
// advances `state`. For IEthresh the oracle set is selected once per
// round; rewards are appended per instance against the per-instance
// majority.
RoundAnswers protocol_answer(const ProtocolConfig& protocol,
                             const std::vector<OracleSpec>& oracles, ProtocolState& state,
                             const std::vector<int>& truth, int num_classes,
                             const std::vector<int>& queried);

struct FoldResult {
    int fold = 0;
    std::vector<QueryState> trace;
    double total_cost = 0.0;
    double elapsed_seconds = 0.0;
    bool resumed = false;
};

struct ExperimentReport {
    std::vector<FoldResult> folds;
    std::vector<std::string> state_files;
    std::vector<std::string> aggregate_files;
};

std::filesystem::path state_file_path(const ExperimentConfig& config, int fold);

// The splits the config describes; depends only on (config, dataset).
std::vector<Split> make_splits(const ExperimentConfig& config, const Dataset& dataset);

// Checks the parts of the config that need the dataset: binary-only
// metrics, cost-table class coverage, batch size vs pool size.
void validate_against_dataset(const ExperimentConfig& config, const Dataset& dataset);

// Runs one fold from scratch, writing <output_dir>/<experiment>_fold<k>.jsonl.
FoldResult run_fold(const ExperimentConfig& config, const Dataset& dataset, const Split& split,
                    int fold);

// Continues one fold from its state file: a complete fold is loaded
// untouched, a partial one resumes at the next round, a file with an
// unreadable header restarts, a missing file runs fresh.
FoldResult resume_fold(const ExperimentConfig& config, const Dataset& dataset, const Split& split,
                       int fold);

// Runs every fold, up to the configured number of workers at a time
// (ALKIT_WORKERS overrides; 0 means one per hardware thread), then
// writes per-metric aggregate curves. Worker count never changes any
// output byte. resume=true reuses existing state files.
ExperimentReport run_experiment(const ExperimentConfig& config, bool resume = false);

// Writes the configured splits to <output_dir>/<experiment>_splits.json
// and returns the path.
std::string write_splits(const ExperimentConfig& config, const Dataset& dataset,
                         const std::vector<Split>& splits);

struct AnalyseOptions {
    std::vector<std::string> inputs;  // state-file paths, after glob expansion
    std::string out_dir;
    CurveAxis axis = CurveAxis::round;
    int grid_size = 50;  // cost axis only
};

// Re-aggregates existing state files (all from one config) into
// per-metric CSV/SVG exports. Returns the written paths.
std::vector<std::string> analyse_state_files(const AnalyseOptions& options);

// Expands '*' and '?' in the filename component of `pattern` against
// the containing directory, or returns the path itself when it has no
// wildcard. Matches are sorted.
std::vector<std::string> expand_glob(const std::string& pattern);

}  // namespace alkit

#endif  // ALKIT_EXPERIMENT_HPP
