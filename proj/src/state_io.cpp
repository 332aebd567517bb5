#include "alkit/state_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

#include "alkit/number_format.hpp"

namespace alkit {
namespace {

using json = nlohmann::ordered_json;

void append_int_array(std::string& out, const std::vector<int>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(values[i]);
    }
    out += ']';
}

void append_json_string(std::string& out, const std::string& value) {
    out += '"';
    for (char c : value) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void require_keys(const json& j, std::initializer_list<const char*> keys, const char* what) {
    for (const char* key : keys) {
        if (!j.contains(key)) throw StateError(std::string(what) + ": missing field '" + key + "'");
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : keys) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) throw StateError(std::string(what) + ": unknown field '" + item.key() + "'");
    }
}

std::vector<int> int_array(const json& j, const char* what) {
    if (!j.is_array()) throw StateError(std::string(what) + ": expected an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw StateError(std::string(what) + ": expected integers");
        out.push_back(v.get<int>());
    }
    return out;
}

double finite_number(const json& j, const char* what) {
    if (!j.is_number()) throw StateError(std::string(what) + ": expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) throw StateError(std::string(what) + ": expected a finite number");
    return v;
}

}  // namespace

void QueryState::validate() const {
    if (round < 0) throw StateError("state: round must be >= 0");
    if (queried_indices.size() != returned_labels.size())
        throw StateError("state: queried_indices and returned_labels differ in length");
    if (round == 0) {
        if (!queried_indices.empty()) throw StateError("state: round 0 must not query");
        if (round_cost != 0.0) throw StateError("state: round 0 must have zero cost");
    } else if (queried_indices.empty()) {
        throw StateError("state: a query round must query at least one instance");
    }
    if (!std::isfinite(round_cost) || round_cost < 0.0)
        throw StateError("state: round_cost must be finite and non-negative");
    for (const auto& [name, value] : performance) {
        if (name.empty()) throw StateError("state: empty metric name");
        if (!std::isfinite(value)) throw StateError("state: non-finite metric value");
    }
}

void ExperimentCheckpoint::check_next_round(const QueryState& state) const {
    state.validate();
    const int expected = trace.empty() ? (state.round == 0 ? 0 : 1) : trace.back().round + 1;
    if (state.round != expected)
        throw StateError("state: expected round " + std::to_string(expected) + ", got round " +
                         std::to_string(state.round));
}

std::string serialize_header(const ExperimentCheckpoint& checkpoint) {
    std::string out = "{\"type\":\"header\",\"digest\":";
    append_json_string(out, checkpoint.digest);
    out += ",\"fold\":" + std::to_string(checkpoint.fold);
    out += ",\"split\":{\"test\":";
    append_int_array(out, checkpoint.split.test.indices());
    out += ",\"train\":";
    append_int_array(out, checkpoint.split.train.indices());
    out += ",\"initially_labeled\":";
    append_int_array(out, checkpoint.split.initially_labeled.indices());
    out += ",\"initially_unlabeled\":";
    append_int_array(out, checkpoint.split.initially_unlabeled.indices());
    out += "}}";
    return out;
}

std::string serialize_state(const QueryState& state) {
    std::string out = "{\"type\":\"state\",\"round\":" + std::to_string(state.round);
    out += ",\"queried_indices\":";
    append_int_array(out, state.queried_indices);
    out += ",\"returned_labels\":";
    append_int_array(out, state.returned_labels);
    out += ",\"round_cost\":" + format_double(state.round_cost);
    out += ",\"performance\":{";
    for (std::size_t i = 0; i < state.performance.size(); ++i) {
        if (i > 0) out += ',';
        append_json_string(out, state.performance[i].first);
        out += ':' + format_double(state.performance[i].second);
    }
    out += "},\"round_seed\":" + format_u64(state.round_seed);
    out += ",\"wall_time\":" + format_double(state.wall_time);
    out += '}';
    return out;
}

ExperimentCheckpoint parse_header(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw CorruptHeader("header: not valid JSON");
    try {
        require_keys(j, {"type", "digest", "fold", "split"}, "header");
        if (j["type"] != "header") throw StateError("header: wrong record type");
        ExperimentCheckpoint cp;
        if (!j["digest"].is_string()) throw StateError("header: digest must be a string");
        cp.digest = j["digest"].get<std::string>();
        if (!j["fold"].is_number_integer()) throw StateError("header: fold must be an integer");
        cp.fold = j["fold"].get<int>();
        const json& s = j["split"];
        require_keys(s, {"test", "train", "initially_labeled", "initially_unlabeled"},
                     "header split");
        cp.split.test = IndexCollection(int_array(s["test"], "header split.test"));
        cp.split.train = IndexCollection(int_array(s["train"], "header split.train"));
        cp.split.initially_labeled =
            IndexCollection(int_array(s["initially_labeled"], "header split.initially_labeled"));
        cp.split.initially_unlabeled = IndexCollection(
            int_array(s["initially_unlabeled"], "header split.initially_unlabeled"));
        return cp;
    } catch (const StateError& e) {
        throw CorruptHeader(e.what());
    }
}

QueryState parse_state(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw StateError("state: not valid JSON");
    require_keys(j,
                 {"type", "round", "queried_indices", "returned_labels", "round_cost",
                  "performance", "round_seed", "wall_time"},
                 "state");
    if (j["type"] != "state") throw StateError("state: wrong record type");
    QueryState s;
    if (!j["round"].is_number_integer()) throw StateError("state: round must be an integer");
    s.round = j["round"].get<int>();
    s.queried_indices = int_array(j["queried_indices"], "state queried_indices");
    s.returned_labels = int_array(j["returned_labels"], "state returned_labels");
    s.round_cost = finite_number(j["round_cost"], "state round_cost");
    if (!j["performance"].is_object()) throw StateError("state: performance must be an object");
    for (const auto& item : j["performance"].items())
        s.performance.emplace_back(item.key(), finite_number(item.value(), "state performance"));
    if (!j["round_seed"].is_number_unsigned() && !j["round_seed"].is_number_integer())
        throw StateError("state: round_seed must be an integer");
    s.round_seed = j["round_seed"].get<std::uint64_t>();
    s.wall_time = finite_number(j["wall_time"], "state wall_time");
    s.validate();
    return s;
}

StateFile::StateFile(std::ofstream out, ExperimentCheckpoint checkpoint)
    : out_(std::move(out)), checkpoint_(std::move(checkpoint)) {}

StateFile StateFile::create(const std::filesystem::path& path, ExperimentCheckpoint header) {
    header.trace.clear();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StateError("cannot open state file for writing: " + path.string());
    out << serialize_header(header) << '\n';
    out.flush();
    if (!out) throw StateError("write failed: " + path.string());
    return StateFile(std::move(out), std::move(header));
}

StateFile StateFile::append_to(const std::filesystem::path& path, ExperimentCheckpoint checkpoint,
                               std::uintmax_t keep_bytes) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) throw StateError("cannot stat state file: " + path.string());
    if (keep_bytes > size) throw StateError("state file shrank underneath us: " + path.string());
    if (keep_bytes < size) std::filesystem::resize_file(path, keep_bytes);
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw StateError("cannot open state file for appending: " + path.string());
    return StateFile(std::move(out), std::move(checkpoint));
}

void StateFile::append(const QueryState& state) {
    checkpoint_.check_next_round(state);
    out_ << serialize_state(state) << '\n';
    out_.flush();
    if (!out_) throw StateError("write failed while appending a round state");
    checkpoint_.trace.push_back(state);
}

RecoverResult recover(const std::filesystem::path& path, const std::string& expected_digest) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StateError("cannot open state file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    // Split into complete lines; a missing final newline marks a torn
    // trailing write.
    std::vector<std::string> lines;
    std::size_t start = 0;
    bool torn_tail = false;
    while (start < content.size()) {
        const std::size_t nl = content.find('\n', start);
        if (nl == std::string::npos) {
            torn_tail = true;
            break;
        }
        lines.push_back(content.substr(start, nl - start));
        start = nl + 1;
    }

    if (lines.empty()) throw CorruptHeader("state file has no complete header line");

    RecoverResult result;
    result.checkpoint = parse_header(lines[0]);
    if (result.checkpoint.digest != expected_digest)
        throw DigestMismatch("state file was written by a different config (digest " +
                             result.checkpoint.digest + ", expected " + expected_digest + ")");

    std::uintmax_t offset = lines[0].size() + 1;
    result.dropped_tail = torn_tail;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const bool last = (i + 1 == lines.size()) && !torn_tail;
        try {
            QueryState s = parse_state(lines[i]);
            result.checkpoint.check_next_round(s);
            result.checkpoint.trace.push_back(std::move(s));
        } catch (const StateError&) {
            // A damaged final line is a round that never completed;
            // damage earlier in the file is unrecoverable.
            if (!last) throw;
            result.dropped_tail = true;
            break;
        }
        offset += lines[i].size() + 1;
    }
    result.valid_bytes = offset;

    result.labeled = result.checkpoint.split.initially_labeled;
    result.unlabeled = result.checkpoint.split.initially_unlabeled;
    for (const QueryState& s : result.checkpoint.trace) {
        if (s.round == 0) continue;
        try {
            auto [labeled, unlabeled] = update_partition(result.labeled, result.unlabeled,
                                                         s.queried_indices);
            result.labeled = std::move(labeled);
            result.unlabeled = std::move(unlabeled);
        } catch (const std::invalid_argument& e) {
            // The trace is internally complete but inconsistent with the split.
            throw StateError("round " + std::to_string(s.round) + ": " + e.what());
        }
    }
    return result;
}

}  // namespace alkit
