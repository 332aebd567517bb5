#ifndef ALKIT_STOPPING_HPP
#define ALKIT_STOPPING_HPP

#include <string>
#include <vector>

#include "alkit/state_io.hpp"

namespace alkit {

enum class StoppingKind { num_of_queries, cost_limit, percent_of_unlabel, time_limit };

StoppingKind stopping_from_name(const std::string& name);
std::string stopping_name(StoppingKind kind);

struct StoppingCriterion {
    StoppingKind kind = StoppingKind::num_of_queries;
    double threshold = 50.0;  // rounds | cost units | fraction | seconds

    void validate() const;
};

// Evaluated after each query round. The round-0 evaluation record does
// not count as a query.
//   num_of_queries     -> query rounds so far >= threshold
//   cost_limit         -> summed round costs >= threshold
//   percent_of_unlabel -> instances queried / initial pool size >= threshold
//   time_limit         -> elapsed seconds >= threshold
bool should_stop(const StoppingCriterion& criterion, const std::vector<QueryState>& trace,
                 std::size_t initial_unlabeled_size, double elapsed_seconds);

}  // namespace alkit

#endif  // ALKIT_STOPPING_HPP
