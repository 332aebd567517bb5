#ifndef ALKIT_METRICS_HPP
#define ALKIT_METRICS_HPP

#include <string>
#include <vector>

namespace alkit {

// Fraction of positions where truth == predicted.
double accuracy_score(const std::vector<int>& truth, const std::vector<int>& predicted);

// Mann-Whitney AUC over positive-class scores, average ranks for ties.
// Binary task only; throws when only one class is present.
double auc_score(const std::vector<int>& truth, const std::vector<double>& scores);

// F1 of the positive class (label 1); 0 when precision + recall = 0.
double f1_score(const std::vector<int>& truth, const std::vector<int>& predicted);

enum class MetricKind { accuracy, auc, f1 };

MetricKind metric_from_name(const std::string& name);
std::string metric_name(MetricKind kind);

}  // namespace alkit

#endif  // ALKIT_METRICS_HPP
