#ifndef ALKIT_ORACLE_HPP
#define ALKIT_ORACLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace alkit {

// Per-query pricing: either one flat cost, or a table keyed by the
// returned class label.
struct CostModel {
    double uniform = 1.0;
    std::map<int, double> per_label;  // non-empty overrides `uniform`

    double cost_of(int returned_label) const;
    void validate(int num_classes) const;
};

// A simulated annotator. With probability noise_rate the true label is
// replaced by a uniform draw from the other classes. The corruption is
// a pure function of (seed, id, instance, repeat), so re-queries are
// idempotent and checkpoint replay is exact.
struct OracleSpec {
    std::string id;
    double noise_rate = 0.0;
    CostModel cost;
    std::uint64_t seed = 0;

    void validate(int num_classes) const;

    // The label this oracle returns for instance `index` whose true
    // label is `truth`, on the repeat-th independent ask.
    int answer(int truth, int index, int num_classes, int repeat = 0) const;
};

struct OracleAnswer {
    int index = 0;
    int label = 0;
    double cost = 0.0;
    std::string oracle_id;
};

// Labels for a batch of instances from one oracle. `truth` is the full
// ground-truth label vector.
std::vector<OracleAnswer> oracle_query(const OracleSpec& oracle, const std::vector<int>& truth,
                                       int num_classes, const std::vector<int>& indices);

// Majority vote over repeated asks, ties to the smallest class label.
// Total cost is the sum of the per-answer costs.
std::pair<int, double> repeated_query(const OracleSpec& oracle, int repeat,
                                      const std::vector<int>& truth, int num_classes,
                                      int index);

// One ask per oracle in the list, aggregated the same way.
std::pair<int, double> repeated_query(const std::vector<OracleSpec>& oracles,
                                      const std::vector<int>& truth, int num_classes,
                                      int index);

// Majority label of a set of answers, ties to the smallest class.
int majority_label(const std::vector<int>& labels);

// Per-oracle 0/1 reward sequences driving IEthresh.
using OracleHistories = std::map<std::string, std::vector<int>>;

// Interval-estimation selection: each oracle's score is the upper
// bound mean + t(0.975, n-1) * s / sqrt(n) of its reward history;
// oracles with fewer than two observations score +infinity (forced
// exploration). Keeps every oracle whose score reaches epsilon times
// the best score; never empty.
std::vector<std::string> ieth_select(const OracleHistories& histories, double epsilon);

// Appends one reward per selected oracle: 1 when its answer matches
// the round majority (ties to the smallest class), else 0.
void ieth_update(OracleHistories& histories,
                 const std::vector<std::pair<std::string, int>>& answers);

// Upper confidence bound used by ieth_select, exposed for tests.
// Returns +infinity when rewards.size() < 2.
double ieth_upper_interval(const std::vector<int>& rewards);

// Two-sided 95% Student-t quantile, t(0.975, dof).
double t_quantile_975(int dof);

}  // namespace alkit

#endif  // ALKIT_ORACLE_HPP
