#include "alkit/stopping.hpp"

#include <cmath>
#include <stdexcept>

namespace alkit {

StoppingKind stopping_from_name(const std::string& name) {
    if (name == "num_of_queries") return StoppingKind::num_of_queries;
    if (name == "cost_limit") return StoppingKind::cost_limit;
    if (name == "percent_of_unlabel") return StoppingKind::percent_of_unlabel;
    if (name == "time_limit") return StoppingKind::time_limit;
    throw std::invalid_argument("unknown stopping criterion: " + name);
}

std::string stopping_name(StoppingKind kind) {
    switch (kind) {
        case StoppingKind::num_of_queries: return "num_of_queries";
        case StoppingKind::cost_limit: return "cost_limit";
        case StoppingKind::percent_of_unlabel: return "percent_of_unlabel";
        case StoppingKind::time_limit: return "time_limit";
    }
    throw std::invalid_argument("unknown stopping kind");
}

void StoppingCriterion::validate() const {
    if (!std::isfinite(threshold) || threshold <= 0.0)
        throw std::invalid_argument("stopping: threshold must be positive");
    if (kind == StoppingKind::percent_of_unlabel && threshold > 1.0)
        throw std::invalid_argument("stopping: percent_of_unlabel threshold must be in (0, 1]");
}

bool should_stop(const StoppingCriterion& criterion, const std::vector<QueryState>& trace,
                 std::size_t initial_unlabeled_size, double elapsed_seconds) {
    std::size_t query_rounds = 0;
    std::size_t queried_instances = 0;
    double total_cost = 0.0;
    for (const QueryState& s : trace) {
        if (s.round == 0) continue;
        ++query_rounds;
        queried_instances += s.queried_indices.size();
        total_cost += s.round_cost;
    }
    switch (criterion.kind) {
        case StoppingKind::num_of_queries:
            return static_cast<double>(query_rounds) >= criterion.threshold;
        case StoppingKind::cost_limit:
            return total_cost >= criterion.threshold;
        case StoppingKind::percent_of_unlabel:
            if (initial_unlabeled_size == 0) return true;
            return static_cast<double>(queried_instances) /
                       static_cast<double>(initial_unlabeled_size) >=
                   criterion.threshold;
        case StoppingKind::time_limit:
            return elapsed_seconds >= criterion.threshold;
    }
    return true;
}

}  // namespace alkit
