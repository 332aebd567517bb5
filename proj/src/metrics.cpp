#include "alkit/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace alkit {

double accuracy_score(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.size() != predicted.size())
        throw std::invalid_argument("accuracy: length mismatch");
    if (truth.empty()) throw std::invalid_argument("accuracy: empty input");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i] == predicted[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double auc_score(const std::vector<int>& truth, const std::vector<double>& scores) {
    if (truth.size() != scores.size()) throw std::invalid_argument("auc: length mismatch");
    if (truth.empty()) throw std::invalid_argument("auc: empty input");
    std::size_t positives = 0;
    for (int y : truth) {
        if (y != 0 && y != 1) throw std::invalid_argument("auc: labels must be binary 0/1");
        positives += static_cast<std::size_t>(y);
    }
    const std::size_t negatives = truth.size() - positives;
    if (positives == 0 || negatives == 0)
        throw std::invalid_argument("auc: needs both classes present");

    // Rank-sum with average ranks over tied score groups.
    std::vector<std::size_t> order(truth.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double positive_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        // Positions i..j-1 share the average 1-based rank.
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t)
            if (truth[order[t]] == 1) positive_rank_sum += avg_rank;
        i = j;
    }
    const double p = static_cast<double>(positives);
    const double n = static_cast<double>(negatives);
    return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * n);
}

double f1_score(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.size() != predicted.size()) throw std::invalid_argument("f1: length mismatch");
    if (truth.empty()) throw std::invalid_argument("f1: empty input");
    double tp = 0.0, fp = 0.0, fn = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] != 0 && truth[i] != 1)
            throw std::invalid_argument("f1: labels must be binary 0/1");
        if (predicted[i] == 1 && truth[i] == 1) tp += 1.0;
        if (predicted[i] == 1 && truth[i] == 0) fp += 1.0;
        if (predicted[i] != 1 && truth[i] == 1) fn += 1.0;
    }
    const double denom = 2.0 * tp + fp + fn;
    if (denom == 0.0) return 0.0;
    return 2.0 * tp / denom;
}

MetricKind metric_from_name(const std::string& name) {
    if (name == "accuracy") return MetricKind::accuracy;
    if (name == "auc") return MetricKind::auc;
    if (name == "f1") return MetricKind::f1;
    throw std::invalid_argument("unknown metric '" + name + "'");
}

std::string metric_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::accuracy: return "accuracy";
        case MetricKind::auc: return "auc";
        case MetricKind::f1: return "f1";
    }
    throw std::logic_error("unreachable");
}

}  // namespace alkit
