#include "alkit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "alkit/metrics.hpp"
#include "alkit/random.hpp"
#include "alkit/strategies.hpp"

namespace alkit {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Deterministic crash points for the interruption tests. The variables
// name a fold (and round) after whose durable append the process dies,
// which exercises recovery without relying on kill timing.
void crash_after_round(int fold, int round) {
    const char* env = std::getenv("ALKIT_CRASH_AFTER_ROUND");
    if (!env) return;
    const std::string want = std::to_string(fold) + ":" + std::to_string(round);
    if (want == env) std::_Exit(9);
}

void crash_after_fold(int fold) {
    const char* env = std::getenv("ALKIT_CRASH_AFTER_FOLD");
    if (!env) return;
    if (std::to_string(fold) == env) std::_Exit(9);
}

const OracleSpec& oracle_by_id(const std::vector<OracleSpec>& oracles, const std::string& id) {
    for (const OracleSpec& oracle : oracles)
        if (oracle.id == id) return oracle;
    throw RunError("unknown oracle id: " + id);
}

double trace_cost(const std::vector<QueryState>& trace) {
    double total = 0.0;
    for (const QueryState& s : trace) total += s.round_cost;
    return total;
}

// Drives one fold: owns the partition, the oracle-protocol state, the
// trained model and the noisy labels seen so far.
class FoldRunner {
public:
    FoldRunner(const ExperimentConfig& config, const Dataset& dataset, int fold)
        : config_(config),
          dataset_(dataset),
          fold_(fold),
          oracles_(config.oracle_specs()),
          model_(config.make_model(dataset.num_classes)) {}

    FoldResult run_fresh(const Split& split) {
        const auto start = Clock::now();
        init(split);
        retrain();
        ExperimentCheckpoint header;
        header.digest = config_.digest();
        header.fold = fold_;
        header.split = split;
        StateFile file = StateFile::create(state_file_path(config_, fold_), std::move(header));
        return drive(std::move(file), start, false);
    }

    FoldResult resume_from(RecoverResult recovered, const Split& split) {
        const auto start = Clock::now();
        if (!(recovered.checkpoint.split.test == split.test &&
              recovered.checkpoint.split.train == split.train &&
              recovered.checkpoint.split.initially_labeled == split.initially_labeled &&
              recovered.checkpoint.split.initially_unlabeled == split.initially_unlabeled))
            throw StateError("fold " + std::to_string(fold_) +
                             ": stored split does not match the configured dataset and seed");
        init(split);
        replay(recovered.checkpoint.trace);
        retrain();

        const auto& trace = recovered.checkpoint.trace;
        const bool exhausted = unlabeled_.empty();
        const bool satisfied =
            !trace.empty() &&
            (exhausted || should_stop(config_.stopping, trace,
                                      split_.initially_unlabeled.size(), 0.0));
        if (satisfied) {
            FoldResult result;
            result.fold = fold_;
            result.trace = trace;
            result.total_cost = trace_cost(trace);
            result.elapsed_seconds = seconds_since(start);
            result.resumed = true;
            return result;
        }
        StateFile file = StateFile::append_to(state_file_path(config_, fold_),
                                              std::move(recovered.checkpoint),
                                              recovered.valid_bytes);
        return drive(std::move(file), start, true);
    }

private:
    void init(const Split& split) {
        split_ = split;
        labeled_ = split.initially_labeled;
        unlabeled_ = split.initially_unlabeled;
        known_labels_.assign(dataset_.n(), -1);
        for (int index : labeled_) known_labels_[index] = dataset_.labels[index];
        protocol_ = ProtocolState{};
    }

    // Re-derives labels and oracle state for an existing trace. The
    // oracle answers are pure functions of the config, so the replay
    // must reproduce the stored labels exactly; a mismatch means the
    // file does not belong to this config and dataset.
    void replay(const std::vector<QueryState>& trace) {
        for (const QueryState& state : trace) {
            if (state.round == 0) continue;
            RoundAnswers answers =
                protocol_answer(config_.protocol, oracles_, protocol_, dataset_.labels,
                                dataset_.num_classes, state.queried_indices);
            if (answers.labels != state.returned_labels)
                throw StateError("fold " + std::to_string(fold_) + " round " +
                                 std::to_string(state.round) +
                                 ": stored labels do not replay; state file does not match "
                                 "this config and dataset");
            apply(state.queried_indices, answers.labels);
        }
    }

    FoldResult drive(StateFile file, Clock::time_point start, bool resumed) {
        if (file.checkpoint().trace.empty()) {
            QueryState baseline;
            baseline.round = 0;
            baseline.performance = evaluate();
            baseline.round_seed =
                derive_seed(config_.seed, SeedStream::round, static_cast<std::uint64_t>(fold_), 0);
            baseline.wall_time = seconds_since(start);
            file.append(baseline);
            crash_after_round(fold_, 0);
        }
        while (true) {
            if (unlabeled_.empty()) break;
            if (should_stop(config_.stopping, file.checkpoint().trace,
                            split_.initially_unlabeled.size(), seconds_since(start)))
                break;
            const int round = file.checkpoint().trace.back().round + 1;
            run_round(file, round);
            crash_after_round(fold_, round);
        }
        crash_after_fold(fold_);
        FoldResult result;
        result.fold = fold_;
        result.trace = file.checkpoint().trace;
        result.total_cost = trace_cost(result.trace);
        result.elapsed_seconds = seconds_since(start);
        result.resumed = resumed;
        return result;
    }

    void run_round(StateFile& file, int round) {
        const auto round_start = Clock::now();
        const std::uint64_t round_seed =
            derive_seed(config_.seed, SeedStream::round, static_cast<std::uint64_t>(fold_),
                        static_cast<std::uint64_t>(round));

        const IndexCollection pool = subsample_pool(
            unlabeled_, config_.strategy.subsample_cap, derive_seed(round_seed, SeedStream::subsample));

        QueryContext ctx{dataset_.features,
                         labeled_.indices(),
                         pool.indices(),
                         known_labels_,
                         dataset_.num_classes,
                         model_.get(),
                         config_.batch_size,
                         derive_seed(round_seed, SeedStream::strategy),
                         nullptr};
        std::vector<double> costs;
        if (config_.strategy.name == StrategyKind::cost_performance) {
            costs = expected_pool_costs(pool.indices());
            ctx.pool_costs = &costs;
        }
        const std::vector<int> queried = select_batch(config_.strategy, ctx);

        RoundAnswers answers = protocol_answer(config_.protocol, oracles_, protocol_,
                                               dataset_.labels, dataset_.num_classes, queried);
        apply(queried, answers.labels);
        retrain();

        QueryState state;
        state.round = round;
        state.queried_indices = queried;
        state.returned_labels = std::move(answers.labels);
        state.round_cost = answers.cost;
        state.performance = evaluate();
        state.round_seed = round_seed;
        state.wall_time = seconds_since(round_start);
        file.append(state);
    }

    void apply(const std::vector<int>& queried, const std::vector<int>& labels) {
        auto [labeled, unlabeled] = update_partition(labeled_, unlabeled_, queried);
        labeled_ = std::move(labeled);
        unlabeled_ = std::move(unlabeled);
        for (std::size_t i = 0; i < queried.size(); ++i) known_labels_[queried[i]] = labels[i];
    }

    void retrain() {
        model_->fit(rows_of(dataset_.features, labeled_.indices()),
                    labels_of(known_labels_, labeled_.indices()));
    }

    std::vector<std::pair<std::string, double>> evaluate() const {
        const Matrix test_features = rows_of(dataset_.features, split_.test.indices());
        const std::vector<int> truth = labels_of(dataset_.labels, split_.test.indices());
        const Matrix probs = model_->predict_proba(test_features);
        std::vector<int> predicted(static_cast<std::size_t>(probs.rows()));
        for (Eigen::Index i = 0; i < probs.rows(); ++i)
            predicted[static_cast<std::size_t>(i)] = argmax_row(probs, i);

        std::vector<std::pair<std::string, double>> performance;
        performance.reserve(config_.metrics.size());
        for (MetricKind metric : config_.metrics) {
            double value = 0.0;
            switch (metric) {
                case MetricKind::accuracy: value = accuracy_score(truth, predicted); break;
                case MetricKind::auc: {
                    std::vector<double> scores(predicted.size());
                    for (Eigen::Index i = 0; i < probs.rows(); ++i)
                        scores[static_cast<std::size_t>(i)] = probs(i, 1);
                    value = auc_score(truth, scores);
                    break;
                }
                case MetricKind::f1: value = f1_score(truth, predicted); break;
            }
            performance.emplace_back(metric_name(metric), value);
        }
        return performance;
    }

    // Expected cost of asking one oracle about each pool instance,
    // averaged over the declared oracles. Per-label tables are
    // weighted by the current model's class probabilities. Protocol
    // multiplicity (repeat count, committee size) scales every
    // instance equally, so it cannot change the selection and is left
    // out.
    std::vector<double> expected_pool_costs(const std::vector<int>& pool) const {
        const bool need_probs = std::any_of(oracles_.begin(), oracles_.end(),
                                            [](const OracleSpec& o) { return !o.cost.per_label.empty(); });
        Matrix probs;
        if (need_probs) probs = model_->predict_proba(rows_of(dataset_.features, pool));
        std::vector<double> costs(pool.size(), 0.0);
        for (std::size_t i = 0; i < pool.size(); ++i) {
            double sum = 0.0;
            for (const OracleSpec& oracle : oracles_) {
                if (oracle.cost.per_label.empty()) {
                    sum += oracle.cost.uniform;
                } else {
                    double expected = 0.0;
                    for (const auto& [label, cost] : oracle.cost.per_label)
                        expected += probs(static_cast<Eigen::Index>(i), label) * cost;
                    sum += expected;
                }
            }
            costs[i] = sum / static_cast<double>(oracles_.size());
        }
        return costs;
    }

    const ExperimentConfig& config_;
    const Dataset& dataset_;
    int fold_;
    std::vector<OracleSpec> oracles_;
    std::unique_ptr<Classifier> model_;
    Split split_;
    IndexCollection labeled_;
    IndexCollection unlabeled_;
    std::vector<int> known_labels_;
    ProtocolState protocol_;
};

LearningCurve fold_round_curve(const std::vector<QueryState>& trace, const std::string& metric,
                               int max_round) {
    LearningCurve curve;
    curve.x_kind = CurveAxis::round;
    for (const QueryState& s : trace) {
        if (s.round > max_round) break;
        for (const auto& [name, value] : s.performance) {
            if (name == metric) {
                curve.x.push_back(static_cast<double>(s.round));
                curve.value.push_back(value);
                break;
            }
        }
    }
    return curve;
}

LearningCurve fold_cost_curve(const std::vector<QueryState>& trace, const std::string& metric) {
    LearningCurve curve;
    curve.x_kind = CurveAxis::cost;
    double cumulative = 0.0;
    for (const QueryState& s : trace) {
        cumulative += s.round_cost;
        for (const auto& [name, value] : s.performance) {
            if (name == metric) {
                curve.x.push_back(cumulative);
                curve.value.push_back(value);
                break;
            }
        }
    }
    return curve;
}

std::vector<std::string> metric_names_of(const std::vector<QueryState>& trace) {
    std::vector<std::string> names;
    if (trace.empty()) return names;
    for (const auto& [name, value] : trace.front().performance) names.push_back(name);
    return names;
}

int effective_workers(const ExperimentConfig& config, int n_folds) {
    int workers = config.workers;
    if (const char* env = std::getenv("ALKIT_WORKERS")) {
        try {
            std::size_t consumed = 0;
            workers = std::stoi(env, &consumed);
            if (consumed != std::string(env).size() || workers < 0) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ConfigError("config: ALKIT_WORKERS must be a non-negative integer, got '" +
                              std::string(env) + "'");
        }
    }
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return std::max(1, std::min(workers, n_folds));
}

}  // namespace

RoundAnswers protocol_answer(const ProtocolConfig& protocol,
                             const std::vector<OracleSpec>& oracles, ProtocolState& state,
                             const std::vector<int>& truth, int num_classes,
                             const std::vector<int>& queried) {
    if (queried.empty()) throw RunError("protocol_answer: empty batch");
    RoundAnswers out;
    out.labels.reserve(queried.size());
    switch (protocol.kind) {
        case ProtocolKind::single: {
            for (const OracleAnswer& answer :
                 oracle_query(oracles.front(), truth, num_classes, queried)) {
                out.labels.push_back(answer.label);
                out.cost += answer.cost;
            }
            break;
        }
        case ProtocolKind::repeated: {
            for (int index : queried) {
                const auto [label, cost] =
                    oracles.size() == 1
                        ? repeated_query(oracles.front(), protocol.repeat, truth, num_classes,
                                         index)
                        : repeated_query(oracles, truth, num_classes, index);
                out.labels.push_back(label);
                out.cost += cost;
            }
            break;
        }
        case ProtocolKind::ieth: {
            // An oracle with no rewards yet scores an infinite upper
            // interval, so seeding empty histories makes the first
            // round consult every oracle.
            for (const OracleSpec& oracle : oracles)
                state.histories.emplace(oracle.id, std::vector<int>{});
            const std::vector<std::string> selected =
                ieth_select(state.histories, protocol.epsilon);
            for (int index : queried) {
                std::vector<std::pair<std::string, int>> answers;
                std::vector<int> labels;
                answers.reserve(selected.size());
                labels.reserve(selected.size());
                for (const std::string& id : selected) {
                    const OracleSpec& oracle = oracle_by_id(oracles, id);
                    const int label = oracle.answer(truth[index], index, num_classes);
                    answers.emplace_back(id, label);
                    labels.push_back(label);
                    out.cost += oracle.cost.cost_of(label);
                }
                out.labels.push_back(majority_label(labels));
                ieth_update(state.histories, answers);
            }
            break;
        }
    }
    return out;
}

std::filesystem::path state_file_path(const ExperimentConfig& config, int fold) {
    return std::filesystem::path(config.output_dir) /
           (config.experiment + "_fold" + std::to_string(fold) + ".jsonl");
}

std::vector<Split> make_splits(const ExperimentConfig& config, const Dataset& dataset) {
    switch (config.split.kind) {
        case SplitKind::holdout:
            return split_al(dataset, config.split.test_ratio, config.split.initial_label_rate,
                            config.split.split_count, config.seed);
        case SplitKind::kfold:
            return kfold_split(dataset, config.split.k, config.split.initial_label_rate,
                               config.seed);
        case SplitKind::file: return splits_from_names_file(dataset, config.split.names_file);
    }
    throw ConfigError("config: unknown split kind");
}

void validate_against_dataset(const ExperimentConfig& config, const Dataset& dataset) {
    for (MetricKind metric : config.metrics) {
        if ((metric == MetricKind::auc || metric == MetricKind::f1) && dataset.num_classes != 2)
            throw ConfigError("config: metric '" + metric_name(metric) +
                              "' requires a binary task, dataset has " +
                              std::to_string(dataset.num_classes) + " classes");
    }
    for (const OracleConfig& oracle : config.oracles) {
        if (oracle.cost_per_label.empty()) continue;
        for (int c = 0; c < dataset.num_classes; ++c) {
            if (oracle.cost_per_label.find(c) == oracle.cost_per_label.end())
                throw ConfigError("config: oracle '" + oracle.id +
                                  "' cost_per_label misses class " + std::to_string(c));
        }
        for (const auto& [label, cost] : oracle.cost_per_label) {
            if (label >= dataset.num_classes)
                throw ConfigError("config: oracle '" + oracle.id +
                                  "' cost_per_label names class " + std::to_string(label) +
                                  " outside the dataset's " +
                                  std::to_string(dataset.num_classes) + " classes");
        }
    }
}

FoldResult run_fold(const ExperimentConfig& config, const Dataset& dataset, const Split& split,
                    int fold) {
    FoldRunner runner(config, dataset, fold);
    return runner.run_fresh(split);
}

FoldResult resume_fold(const ExperimentConfig& config, const Dataset& dataset, const Split& split,
                       int fold) {
    const std::filesystem::path path = state_file_path(config, fold);
    if (!std::filesystem::exists(path)) return run_fold(config, dataset, split, fold);
    RecoverResult recovered;
    try {
        recovered = recover(path, config.digest());
    } catch (const CorruptHeader&) {
        return run_fold(config, dataset, split, fold);
    }
    FoldRunner runner(config, dataset, fold);
    return runner.resume_from(std::move(recovered), split);
}

std::string write_splits(const ExperimentConfig& config, const Dataset& dataset,
                         const std::vector<Split>& splits) {
    std::filesystem::create_directories(config.output_dir);
    const std::filesystem::path path =
        std::filesystem::path(config.output_dir) / (config.experiment + "_splits.json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw RunError("cannot write splits file: " + path.string());
    const auto int_list = [](const IndexCollection& indices) {
        std::string s = "[";
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (i > 0) s += ',';
            s += std::to_string(indices[i]);
        }
        return s + ']';
    };
    const auto name_list = [&dataset](const IndexCollection& indices) {
        std::string s = "[";
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (i > 0) s += ',';
            s += '"' + dataset.names[static_cast<std::size_t>(indices[i])] + '"';
        }
        return s + ']';
    };
    out << "{\"folds\":[";
    for (std::size_t f = 0; f < splits.size(); ++f) {
        if (f > 0) out << ',';
        const Split& split = splits[f];
        out << "{\"test\":" << int_list(split.test) << ",\"train\":" << int_list(split.train)
            << ",\"labeled\":" << int_list(split.initially_labeled)
            << ",\"unlabeled\":" << int_list(split.initially_unlabeled);
        if (dataset.has_names())
            out << ",\"test_names\":" << name_list(split.test)
                << ",\"labeled_names\":" << name_list(split.initially_labeled);
        out << '}';
    }
    out << "]}\n";
    if (!out) throw RunError("failed writing splits file: " + path.string());
    return path.string();
}

ExperimentReport run_experiment(const ExperimentConfig& config, bool resume) {
    Dataset dataset = [&] {
        CsvOptions options;
        options.label_column = config.dataset.label_column;
        options.has_header = config.dataset.has_header;
        if (config.dataset.name_column >= 0) options.name_column = config.dataset.name_column;
        return load_dataset(config.dataset.path, options);
    }();
    validate_against_dataset(config, dataset);
    const std::vector<Split> splits = make_splits(config, dataset);
    std::filesystem::create_directories(config.output_dir);

    const int n_folds = static_cast<int>(splits.size());
    std::vector<FoldResult> results(static_cast<std::size_t>(n_folds));
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto worker = [&] {
        while (!failed.load()) {
            const int fold = next.fetch_add(1);
            if (fold >= n_folds) return;
            try {
                results[static_cast<std::size_t>(fold)] =
                    resume ? resume_fold(config, dataset, splits[static_cast<std::size_t>(fold)],
                                         fold)
                           : run_fold(config, dataset, splits[static_cast<std::size_t>(fold)],
                                      fold);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    const int workers = effective_workers(config, n_folds);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    ExperimentReport report;
    report.folds = std::move(results);
    for (int fold = 0; fold < n_folds; ++fold)
        report.state_files.push_back(state_file_path(config, fold).string());

    // Aggregate each metric over the rounds every fold completed; the
    // common prefix keeps the grids identical when stopping rules end
    // folds at different rounds.
    int max_round = std::numeric_limits<int>::max();
    for (const FoldResult& fold : report.folds)
        max_round = std::min(max_round, fold.trace.back().round);
    for (MetricKind metric : config.metrics) {
        const std::string name = metric_name(metric);
        std::vector<LearningCurve> curves;
        curves.reserve(report.folds.size());
        for (const FoldResult& fold : report.folds)
            curves.push_back(fold_round_curve(fold.trace, name, max_round));
        const AggregateCurve aggregate = aggregate_aligned(curves);
        for (std::string& path :
             export_results(aggregate, config.output_dir, config.experiment + "_" + name))
            report.aggregate_files.push_back(std::move(path));
    }
    return report;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
    const std::filesystem::path path(pattern);
    const std::string name = path.filename().string();
    if (name.find('*') == std::string::npos && name.find('?') == std::string::npos)
        return {pattern};

    // Greedy wildcard match over the filename component only.
    const auto matches = [](const std::string& text, const std::string& pat) {
        std::size_t t = 0, p = 0, star_p = std::string::npos, star_t = 0;
        while (t < text.size()) {
            if (p < pat.size() && (pat[p] == '?' || pat[p] == text[t])) {
                ++t, ++p;
            } else if (p < pat.size() && pat[p] == '*') {
                star_p = p++;
                star_t = t;
            } else if (star_p != std::string::npos) {
                p = star_p + 1;
                t = ++star_t;
            } else {
                return false;
            }
        }
        while (p < pat.size() && pat[p] == '*') ++p;
        return p == pat.size();
    };

    const std::filesystem::path dir = path.parent_path().empty() ? "." : path.parent_path();
    std::vector<std::string> out;
    if (!std::filesystem::is_directory(dir)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (matches(entry.path().filename().string(), name)) out.push_back(entry.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> analyse_state_files(const AnalyseOptions& options) {
    if (options.inputs.empty()) throw ConfigError("config: analyse needs at least one state file");
    if (options.out_dir.empty()) throw ConfigError("config: analyse needs an output directory");
    if (options.axis == CurveAxis::cost && options.grid_size < 2)
        throw ConfigError("config: analyse grid size must be >= 2");

    std::vector<ExperimentCheckpoint> checkpoints;
    for (const std::string& input : options.inputs) {
        std::ifstream in(input, std::ios::binary);
        if (!in) throw RunError("cannot open state file: " + input);
        std::string first_line;
        if (!std::getline(in, first_line)) throw RunError("empty state file: " + input);
        const ExperimentCheckpoint header = parse_header(first_line);
        RecoverResult recovered = recover(input, header.digest);
        checkpoints.push_back(std::move(recovered.checkpoint));
    }
    for (const ExperimentCheckpoint& cp : checkpoints) {
        if (cp.digest != checkpoints.front().digest)
            throw RunError("state files come from different configs (digest mismatch)");
        if (cp.trace.empty()) throw RunError("state file has no rounds to analyse");
    }

    const std::vector<std::string> metrics = metric_names_of(checkpoints.front().trace);
    if (metrics.empty()) throw RunError("state files record no metrics");

    int max_round = std::numeric_limits<int>::max();
    for (const ExperimentCheckpoint& cp : checkpoints)
        max_round = std::min(max_round, cp.trace.back().round);

    std::filesystem::create_directories(options.out_dir);
    std::vector<std::string> written;
    for (const std::string& metric : metrics) {
        std::vector<LearningCurve> curves;
        curves.reserve(checkpoints.size());
        for (const ExperimentCheckpoint& cp : checkpoints)
            curves.push_back(options.axis == CurveAxis::round
                                 ? fold_round_curve(cp.trace, metric, max_round)
                                 : fold_cost_curve(cp.trace, metric));
        const AggregateCurve aggregate =
            options.axis == CurveAxis::round
                ? aggregate_aligned(curves)
                : interpolate_cost_curves(curves, options.grid_size);
        const std::string suffix = options.axis == CurveAxis::round ? "_round" : "_cost";
        for (std::string& path : export_results(aggregate, options.out_dir, metric + suffix))
            written.push_back(std::move(path));
    }
    return written;
}

}  // namespace alkit
