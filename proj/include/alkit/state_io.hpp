#ifndef ALKIT_STATE_IO_HPP
#define ALKIT_STATE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alkit/index_collection.hpp"
#include "alkit/split.hpp"

namespace alkit {

struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The stored config digest differs from the running config's digest.
struct DigestMismatch : StateError {
    using StateError::StateError;
};

// The first line of the file is unreadable; the fold has to restart.
struct CorruptHeader : StateError {
    using StateError::StateError;
};

// One completed query round. Round 0 is the evaluation-only baseline
// (no queries, zero cost); every later round queries at least one
// instance. wall_time is informational and excluded from determinism.
struct QueryState {
    int round = 0;
    std::vector<int> queried_indices;
    std::vector<int> returned_labels;
    double round_cost = 0.0;
    std::vector<std::pair<std::string, double>> performance;
    std::uint64_t round_seed = 0;
    double wall_time = 0.0;

    void validate() const;
};

// Everything needed to resume one fold: which config wrote it, the
// fold's split, and the per-round trace.
struct ExperimentCheckpoint {
    std::string digest;
    int fold = 0;
    Split split;
    std::vector<QueryState> trace;

    // Throws unless state.round extends the trace by exactly one round
    // (an empty trace accepts round 0 or round 1).
    void check_next_round(const QueryState& state) const;
};

// One JSON line each; field order is fixed so identical values give
// identical bytes. Numbers carry 17 significant digits.
std::string serialize_header(const ExperimentCheckpoint& checkpoint);
std::string serialize_state(const QueryState& state);
ExperimentCheckpoint parse_header(const std::string& line);
QueryState parse_state(const std::string& line);

// Append-only writer for one fold's state file. Every append lands on
// disk (flushed) before returning, so a killed process loses at most
// the line being written.
class StateFile {
public:
    // Creates or truncates path and writes the header line.
    static StateFile create(const std::filesystem::path& path, ExperimentCheckpoint header);

    // Reopens path for appending. keep_bytes is the verified prefix
    // from recover(); anything after it (a torn trailing line) is cut.
    static StateFile append_to(const std::filesystem::path& path, ExperimentCheckpoint checkpoint,
                               std::uintmax_t keep_bytes);

    void append(const QueryState& state);

    const ExperimentCheckpoint& checkpoint() const { return checkpoint_; }

private:
    StateFile(std::ofstream out, ExperimentCheckpoint checkpoint);

    std::ofstream out_;
    ExperimentCheckpoint checkpoint_;
};

struct RecoverResult {
    ExperimentCheckpoint checkpoint;
    IndexCollection labeled;
    IndexCollection unlabeled;
    // Byte length of the valid prefix; shorter than the file when a
    // torn trailing line was dropped.
    std::uintmax_t valid_bytes = 0;
    bool dropped_tail = false;
};

// Reads a state file back, verifying the digest and replaying
// queried_indices over the stored split to rebuild the partition. A
// truncated or unparsable final line is treated as a round that never
// happened; damage anywhere else is an error.
RecoverResult recover(const std::filesystem::path& path, const std::string& expected_digest);

}  // namespace alkit

#endif  // ALKIT_STATE_IO_HPP
