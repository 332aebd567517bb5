#include "alkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "alkit/random.hpp"

namespace alkit {

double CostModel::cost_of(int returned_label) const {
    if (per_label.empty()) return uniform;
    auto it = per_label.find(returned_label);
    if (it == per_label.end())
        throw std::invalid_argument("oracle: no cost entry for label " +
                                    std::to_string(returned_label));
    return it->second;
}

void CostModel::validate(int num_classes) const {
    if (per_label.empty()) {
        if (!(uniform > 0.0)) throw std::invalid_argument("oracle: cost must be positive");
        return;
    }
    if (static_cast<int>(per_label.size()) != num_classes)
        throw std::invalid_argument("oracle: per-label cost table must cover every class");
    for (const auto& [label, cost] : per_label) {
        if (label < 0 || label >= num_classes)
            throw std::invalid_argument("oracle: cost table label out of range");
        if (!(cost > 0.0)) throw std::invalid_argument("oracle: cost must be positive");
    }
}

void OracleSpec::validate(int num_classes) const {
    if (id.empty()) throw std::invalid_argument("oracle: id must be non-empty");
    if (noise_rate < 0.0 || noise_rate > 1.0)
        throw std::invalid_argument("oracle: noise_rate must be in [0, 1]");
    cost.validate(num_classes);
}

int OracleSpec::answer(int truth, int index, int num_classes, int repeat) const {
    if (truth < 0 || truth >= num_classes)
        throw std::invalid_argument("oracle: true label out of range");
    if (repeat < 0) throw std::invalid_argument("oracle: repeat must be >= 0");
    const std::uint64_t word = derive_seed(
        derive_seed(seed, SeedStream::oracle, fnv1a64(id), static_cast<std::uint64_t>(index)),
        static_cast<std::uint64_t>(repeat));
    const double u = static_cast<double>(derive_seed(word, 0) >> 11) * 0x1.0p-53;
    if (u >= noise_rate) return truth;
    // Uniform draw over the other classes.
    const auto pick = static_cast<int>(derive_seed(word, 1) %
                                       static_cast<std::uint64_t>(num_classes - 1));
    return pick >= truth ? pick + 1 : pick;
}

std::vector<OracleAnswer> oracle_query(const OracleSpec& oracle, const std::vector<int>& truth,
                                       int num_classes, const std::vector<int>& indices) {
    std::vector<OracleAnswer> answers;
    answers.reserve(indices.size());
    for (int index : indices) {
        if (index < 0 || index >= static_cast<int>(truth.size()))
            throw std::invalid_argument("oracle: instance index out of range");
        OracleAnswer a;
        a.index = index;
        a.label = oracle.answer(truth[static_cast<std::size_t>(index)], index, num_classes);
        a.cost = oracle.cost.cost_of(a.label);
        a.oracle_id = oracle.id;
        answers.push_back(std::move(a));
    }
    return answers;
}

int majority_label(const std::vector<int>& labels) {
    if (labels.empty()) throw std::invalid_argument("majority: no labels");
    std::map<int, int> counts;
    for (int y : labels) ++counts[y];
    int best_label = -1, best_count = -1;
    for (const auto& [label, count] : counts) {
        if (count > best_count) {  // map iterates labels ascending, so ties keep the smaller
            best_count = count;
            best_label = label;
        }
    }
    return best_label;
}

std::pair<int, double> repeated_query(const OracleSpec& oracle, int repeat,
                                      const std::vector<int>& truth, int num_classes,
                                      int index) {
    if (repeat < 1) throw std::invalid_argument("repeated_query: repeat must be >= 1");
    if (index < 0 || index >= static_cast<int>(truth.size()))
        throw std::invalid_argument("repeated_query: instance index out of range");
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(repeat));
    double total_cost = 0.0;
    for (int r = 0; r < repeat; ++r) {
        const int label =
            oracle.answer(truth[static_cast<std::size_t>(index)], index, num_classes, r);
        labels.push_back(label);
        total_cost += oracle.cost.cost_of(label);
    }
    return {majority_label(labels), total_cost};
}

std::pair<int, double> repeated_query(const std::vector<OracleSpec>& oracles,
                                      const std::vector<int>& truth, int num_classes,
                                      int index) {
    if (oracles.empty()) throw std::invalid_argument("repeated_query: no oracles");
    if (index < 0 || index >= static_cast<int>(truth.size()))
        throw std::invalid_argument("repeated_query: instance index out of range");
    std::vector<int> labels;
    labels.reserve(oracles.size());
    double total_cost = 0.0;
    for (const auto& oracle : oracles) {
        const int label =
            oracle.answer(truth[static_cast<std::size_t>(index)], index, num_classes);
        labels.push_back(label);
        total_cost += oracle.cost.cost_of(label);
    }
    return {majority_label(labels), total_cost};
}

double t_quantile_975(int dof) {
    if (dof < 1) throw std::invalid_argument("t_quantile: dof must be >= 1");
    boost::math::students_t_distribution<double> dist(static_cast<double>(dof));
    return boost::math::quantile(dist, 0.975);
}

double ieth_upper_interval(const std::vector<int>& rewards) {
    const auto n = rewards.size();
    if (n < 2) return std::numeric_limits<double>::infinity();
    double mean = 0.0;
    for (int r : rewards) mean += r;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (int r : rewards) ss += (r - mean) * (r - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return mean + t_quantile_975(static_cast<int>(n) - 1) * sd /
                      std::sqrt(static_cast<double>(n));
}

std::vector<std::string> ieth_select(const OracleHistories& histories, double epsilon) {
    if (histories.empty()) throw std::invalid_argument("ieth_select: no oracle histories");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("ieth_select: epsilon must be in (0, 1]");

    std::vector<std::pair<std::string, double>> scores;
    scores.reserve(histories.size());
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [id, rewards] : histories) {
        const double ui = ieth_upper_interval(rewards);
        scores.emplace_back(id, ui);
        best = std::max(best, ui);
    }
    std::vector<std::string> selected;
    for (const auto& [id, ui] : scores)
        if (ui >= epsilon * best) selected.push_back(id);
    return selected;  // the best scorer always qualifies
}

void ieth_update(OracleHistories& histories,
                 const std::vector<std::pair<std::string, int>>& answers) {
    if (answers.empty()) throw std::invalid_argument("ieth_update: no answers");
    std::vector<int> labels;
    labels.reserve(answers.size());
    for (const auto& [id, label] : answers) labels.push_back(label);
    const int majority = majority_label(labels);
    for (const auto& [id, label] : answers)
        histories[id].push_back(label == majority ? 1 : 0);
}

}  // namespace alkit
